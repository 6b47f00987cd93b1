#include <arm_neon.h>

#include "autoscore/kernels.hpp"

namespace autoscore::kernels::neon {

namespace {

inline void axpy(double s, const double* src, double* dst, std::size_t n) {
  const float64x2_t vs = vdupq_n_f64(s);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) vst1q_f64(dst + k, vfmaq_f64(vld1q_f64(dst + k), vs, vld1q_f64(src + k)));
  for (; k < n; ++k) dst[k] += s * src[k];
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(a + k), vld1q_f64(b + k));
    acc1 = vfmaq_f64(acc1, vld1q_f64(a + k + 2), vld1q_f64(b + k + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
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

}  // namespace autoscore::kernels::neon
