#include "homshift/kernels.hpp"

#if defined(HOMSHIFT_HAVE_AVX2_KERNELS)

#include <immintrin.h>

// Compiled with a per-function target so the rest of the build stays on the
// baseline ISA. No FMA: products and sums are rounded separately, matching
// the scalar kernels operation for operation.
#define HOMSHIFT_AVX2 __attribute__((target("avx2")))

namespace homshift::kernels::avx2 {

namespace {

// (ar + i ai) * (b0, b1) for two interleaved complex numbers in b.
HOMSHIFT_AVX2 inline __m256d cmul2(__m256d ar, __m256d ai, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  const __m256d t0 = _mm256_mul_pd(ar, b);      // ar*br, ar*bi
  const __m256d t1 = _mm256_mul_pd(ai, bswap);  // ai*bi, ai*br
  return _mm256_addsub_pd(t0, t1);              // ar*br-ai*bi, ar*bi+ai*br
}

}  // namespace

HOMSHIFT_AVX2 void cgemm(std::size_t m, std::size_t k, std::size_t n,
                         const Complex* a, const Complex* b, Complex* c) {
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
  const std::size_t n2 = n & ~std::size_t{1};
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = cd + 2 * i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ars = a[i * k + p].real();
      const double ais = a[i * k + p].imag();
      if (ars == 0.0 && ais == 0.0) continue;
      const __m256d ar = _mm256_set1_pd(ars);
      const __m256d ai = _mm256_set1_pd(ais);
      const double* brow = bd + 2 * p * n;
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(brow + 2 * j);
        const __m256d cv = _mm256_loadu_pd(crow + 2 * j);
        _mm256_storeu_pd(crow + 2 * j, _mm256_add_pd(cv, cmul2(ar, ai, bv)));
      }
      for (; j < n; ++j) {
        const double br = brow[2 * j];
        const double bi = brow[2 * j + 1];
        const double pr = ars * br - ais * bi;
        const double pi = ars * bi + ais * br;
        crow[2 * j] += pr;
        crow[2 * j + 1] += pi;
      }
    }
  }
}

HOMSHIFT_AVX2 void caxpy(std::size_t len, Complex alpha, const Complex* x,
                         Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const std::size_t len2 = len & ~std::size_t{1};
  std::size_t j = 0;
  for (; j < len2; j += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * j);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * j);
    _mm256_storeu_pd(yd + 2 * j, _mm256_add_pd(yv, cmul2(ar, ai, xv)));
  }
  for (; j < len; ++j) {
    const double xr = xd[2 * j];
    const double xi = xd[2 * j + 1];
    const double pr = alpha.real() * xr - alpha.imag() * xi;
    const double pi = alpha.real() * xi + alpha.imag() * xr;
    yd[2 * j] += pr;
    yd[2 * j + 1] += pi;
  }
}

HOMSHIFT_AVX2 double sum_abs_sq(std::size_t len, const Complex* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t total = 2 * len;
  const std::size_t total8 = total & ~std::size_t{7};
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j < total8; j += 8) {
    const __m256d v0 = _mm256_loadu_pd(xd + j);
    const __m256d v1 = _mm256_loadu_pd(xd + j + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(v0, v0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(v1, v1));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; j < total; ++j) acc += xd[j] * xd[j];
  return acc;
}

}  // namespace homshift::kernels::avx2

#endif
