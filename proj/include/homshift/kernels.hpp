#pragma once

// Inner-loop kernels for dense complex arithmetic. Every kernel has a scalar
// reference implementation and an AVX2 variant; the variant is picked once at
// startup from the host CPU and can be overridden for equivalence testing.
//
// cgemm and caxpy perform the same floating-point operations in the same
// order in every variant, so their results are bit-identical across ISAs.
// sum_abs_sq reassociates the reduction and agrees only to rounding.

#include <complex>
#include <cstddef>
#include <string_view>

namespace homshift::kernels {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

// Best ISA supported by this CPU and this build.
Isa detected_isa() noexcept;

// ISA currently used by the dispatching entry points below.
Isa active_isa() noexcept;

// Selects the ISA for subsequent calls. Requests for an unsupported ISA fall
// back to scalar. Returns the previously active ISA.
Isa set_isa(Isa isa) noexcept;

class ScopedIsa {
 public:
  explicit ScopedIsa(Isa isa) noexcept : previous_(set_isa(isa)) {}
  ~ScopedIsa() { set_isa(previous_); }
  ScopedIsa(const ScopedIsa&) = delete;
  ScopedIsa& operator=(const ScopedIsa&) = delete;

 private:
  Isa previous_;
};

// c[m x n] = a[m x k] * b[k x n], all row-major and densely packed.
void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c);

// y += alpha * x
void caxpy(std::size_t len, Complex alpha, const Complex* x, Complex* y);

// sum |x_i|^2
double sum_abs_sq(std::size_t len, const Complex* x);

namespace scalar {
void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c);
void caxpy(std::size_t len, Complex alpha, const Complex* x, Complex* y);
double sum_abs_sq(std::size_t len, const Complex* x);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define HOMSHIFT_HAVE_AVX2_KERNELS 1
namespace avx2 {
void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c);
void caxpy(std::size_t len, Complex alpha, const Complex* x, Complex* y);
double sum_abs_sq(std::size_t len, const Complex* x);
}  // namespace avx2
#endif

}  // namespace homshift::kernels
