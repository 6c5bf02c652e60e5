#include <atomic>

#include "homshift/kernels.hpp"

namespace homshift::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(HOMSHIFT_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

std::atomic<Isa>& active() noexcept {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

Isa detected_isa() noexcept { return cpu_has_avx2() ? Isa::avx2 : Isa::scalar; }

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

Isa set_isa(Isa isa) noexcept {
  if (isa == Isa::avx2 && !cpu_has_avx2()) isa = Isa::scalar;
  return active().exchange(isa, std::memory_order_relaxed);
}

void cgemm(std::size_t m, std::size_t k, std::size_t n, const Complex* a,
           const Complex* b, Complex* c) {
#if defined(HOMSHIFT_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::avx2) return avx2::cgemm(m, k, n, a, b, c);
#endif
  scalar::cgemm(m, k, n, a, b, c);
}

void caxpy(std::size_t len, Complex alpha, const Complex* x, Complex* y) {
#if defined(HOMSHIFT_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::avx2) return avx2::caxpy(len, alpha, x, y);
#endif
  scalar::caxpy(len, alpha, x, y);
}

double sum_abs_sq(std::size_t len, const Complex* x) {
#if defined(HOMSHIFT_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::avx2) return avx2::sum_abs_sq(len, x);
#endif
  return scalar::sum_abs_sq(len, x);
}

}  // namespace homshift::kernels
