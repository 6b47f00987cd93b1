#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "autoscore/kernels.hpp"

namespace autoscore::kernels {

namespace {

struct Table {
  double (*dot)(const double*, const double*, std::size_t);
  void (*gemv)(MatrixView, const double*, double*);
  void (*gemv_transposed)(MatrixView, const double*, double*);
  void (*weighted_gram)(MatrixView, const double*, double*);
};

constexpr Table kScalar{scalar::dot, scalar::gemv, scalar::gemv_transposed, scalar::weighted_gram};
#if defined(AUTOSCORE_HAVE_AVX2)
constexpr Table kAvx2{avx2::dot, avx2::gemv, avx2::gemv_transposed, avx2::weighted_gram};
#endif
#if defined(AUTOSCORE_HAVE_NEON)
constexpr Table kNeon{neon::dot, neon::gemv, neon::gemv_transposed, neon::weighted_gram};
#endif

const Table* table_for(Backend b) {
  switch (b) {
    case Backend::scalar: return &kScalar;
    case Backend::avx2:
#if defined(AUTOSCORE_HAVE_AVX2)
      return &kAvx2;
#else
      return nullptr;
#endif
    case Backend::neon:
#if defined(AUTOSCORE_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Backend detect() {
  if (const char* forced = std::getenv("AUTOSCORE_SIMD")) {
    std::string_view f(forced);
    if (f == "scalar") return Backend::scalar;
    if (f == "avx2" && backend_supported(Backend::avx2)) return Backend::avx2;
    if (f == "neon" && backend_supported(Backend::neon)) return Backend::neon;
  }
  if (backend_supported(Backend::avx2)) return Backend::avx2;
  if (backend_supported(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

std::atomic<Backend>& current() {
  static std::atomic<Backend> b{detect()};
  return b;
}

const Table& active() { return *table_for(current().load(std::memory_order_relaxed)); }

void check_sizes(MatrixView x, std::size_t v_len, std::size_t expected_v) {
  if (v_len != expected_v) throw std::invalid_argument("kernel operand size mismatch");
  (void)x;
}

}  // namespace

std::string to_string(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "scalar";
}

bool backend_supported(Backend b) {
  switch (b) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(AUTOSCORE_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Backend::neon:
#if defined(AUTOSCORE_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Backend active_backend() { return current().load(); }

void set_backend(Backend b) {
  if (!backend_supported(b)) throw std::invalid_argument("SIMD backend not supported on this CPU: " + to_string(b));
  current().store(b);
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("kernel operand size mismatch");
  return active().dot(a.data(), b.data(), a.size());
}

void gemv(MatrixView x, std::span<const double> v, std::span<double> out) {
  check_sizes(x, v.size(), x.cols);
  check_sizes(x, out.size(), x.rows);
  active().gemv(x, v.data(), out.data());
}

void gemv_transposed(MatrixView x, std::span<const double> w, std::span<double> out) {
  check_sizes(x, w.size(), x.rows);
  check_sizes(x, out.size(), x.cols);
  active().gemv_transposed(x, w.data(), out.data());
}

void weighted_gram(MatrixView x, std::span<const double> w, std::span<double> out) {
  check_sizes(x, w.size(), x.rows);
  check_sizes(x, out.size(), x.cols * x.cols);
  active().weighted_gram(x, w.data(), out.data());
}

}  // namespace autoscore::kernels
