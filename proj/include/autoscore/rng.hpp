#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace autoscore {

// Mixes a base seed with a stream index so that independent tasks (trees,
// rows, bootstrap resamples) each get a reproducible generator regardless of
// the order in which they run.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t stream) : engine_(derive_seed(seed, stream)) {}

  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1); never returns 0.
  double uniform_open();
  // Uniform integer on [0, n).
  std::size_t below(std::size_t n);
  double normal();

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace autoscore
