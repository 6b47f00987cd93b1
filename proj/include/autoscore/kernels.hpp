#pragma once

// Dense linear-algebra kernels behind the proportional-odds Newton solver.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, an AVX2/FMA (x86-64) or NEON (aarch64) variant. The variant is
// chosen once at first use from the CPU's capabilities; the environment
// variable AUTOSCORE_SIMD=scalar|avx2|neon forces a particular one.
//
// Matrices are dense, row-major, with `cols` doubles per row.

#include <cstddef>
#include <span>
#include <string>

namespace autoscore::kernels {

struct MatrixView {
  const double* data = nullptr;
  std::size_t rows = 0;
  std::size_t cols = 0;

  std::span<const double> row(std::size_t i) const { return {data + i * cols, cols}; }
};

enum class Backend { scalar, avx2, neon };

std::string to_string(Backend b);
bool backend_supported(Backend b);
Backend active_backend();
// Throws std::invalid_argument if the backend is not supported on this CPU.
void set_backend(Backend b);

double dot(std::span<const double> a, std::span<const double> b);

// out = X v
void gemv(MatrixView x, std::span<const double> v, std::span<double> out);

// out += X' w
void gemv_transposed(MatrixView x, std::span<const double> w, std::span<double> out);

// out (cols x cols, row-major) += X' diag(w) X. Rows whose entries are zero
// are skipped, so sparse dummy-coded designs cost O(nnz * cols).
void weighted_gram(MatrixView x, std::span<const double> w, std::span<double> out);

// Direct access to each implementation, for equivalence testing.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void gemv(MatrixView x, const double* v, double* out);
void gemv_transposed(MatrixView x, const double* w, double* out);
void weighted_gram(MatrixView x, const double* w, double* out);
}  // namespace scalar

namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void gemv(MatrixView x, const double* v, double* out);
void gemv_transposed(MatrixView x, const double* w, double* out);
void weighted_gram(MatrixView x, const double* w, double* out);
}  // namespace avx2

namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void gemv(MatrixView x, const double* v, double* out);
void gemv_transposed(MatrixView x, const double* w, double* out);
void weighted_gram(MatrixView x, const double* w, double* out);
}  // namespace neon

}  // namespace autoscore::kernels
