#include "homshift/kernels.hpp"

namespace homshift::kernels::scalar {

void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c) {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = cd + 2 * i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real();
      const double ai = a[i * k + p].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const double* brow = bd + 2 * p * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        const double pr = ar * br - ai * bi;
        const double pi = ar * bi + ai * br;
        crow[2 * j] += pr;
        crow[2 * j + 1] += pi;
      }
    }
  }
}

void caxpy(std::size_t len, Complex alpha, const Complex* x, Complex* y) {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t j = 0; j < len; ++j) {
    const double xr = xd[2 * j];
    const double xi = xd[2 * j + 1];
    const double pr = ar * xr - ai * xi;
    const double pi = ar * xi + ai * xr;
    yd[2 * j] += pr;
    yd[2 * j + 1] += pi;
  }
}

double sum_abs_sq(std::size_t len, const Complex* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  double acc = 0.0;
  for (std::size_t j = 0; j < 2 * len; ++j) acc += xd[j] * xd[j];
  return acc;
}

}  // namespace homshift::kernels::scalar
