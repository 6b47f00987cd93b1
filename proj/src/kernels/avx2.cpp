#include <immintrin.h>

#include "autoscore/kernels.hpp"

namespace autoscore::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// dst[0..n) += s * src[0..n)
inline void axpy(double s, const double* src, double* dst, std::size_t n) {
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    __m256d d = _mm256_loadu_pd(dst + k);
    d = _mm256_fmadd_pd(vs, _mm256_loadu_pd(src + k), d);
    _mm256_storeu_pd(dst + k, d);
  }
  for (; k < n; ++k) dst[k] += s * src[k];
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k + 4), _mm256_loadu_pd(b + k + 4), acc1);
  }
  for (; k + 4 <= n; k += 4) acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + k), _mm256_loadu_pd(b + k), acc0);
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; k < n; ++k) s += a[k] * b[k];
  return s;
}

void gemv(MatrixView x, const double* v, double* out) {
  for (std::size_t i = 0; i < x.rows; ++i) out[i] = dot(x.data + i * x.cols, v, x.cols);
}

void gemv_transposed(MatrixView x, const double* w, double* out) {
  for (std::size_t i = 0; i < x.rows; ++i) {
    if (w[i] == 0.0) continue;
    axpy(w[i], x.data + i * x.cols, out, x.cols);
  }
}

void weighted_gram(MatrixView x, const double* w, double* out) {
  const std::size_t p = x.cols;
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double wi = w[i];
    if (wi == 0.0) continue;
    const double* row = x.data + i * p;
    for (std::size_t a = 0; a < p; ++a) {
      const double s = wi * row[a];
      if (s == 0.0) continue;
      axpy(s, row, out + a * p, p);
    }
  }
}

}  // namespace autoscore::kernels::avx2
