#include "autoscore/kernels.hpp"

namespace autoscore::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

void gemv(MatrixView x, const double* v, double* out) {
  for (std::size_t i = 0; i < x.rows; ++i) out[i] = dot(x.data + i * x.cols, v, x.cols);
}

void gemv_transposed(MatrixView x, const double* w, double* out) {
  for (std::size_t i = 0; i < x.rows; ++i) {
    const double wi = w[i];
    if (wi == 0.0) continue;
    const double* row = x.data + i * x.cols;
    for (std::size_t k = 0; k < x.cols; ++k) out[k] += wi * row[k];
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
      double* dst = out + a * p;
      for (std::size_t b = 0; b < p; ++b) dst[b] += s * row[b];
    }
  }
}

}  // namespace autoscore::kernels::scalar
