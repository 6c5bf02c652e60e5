#pragma once
// Test-only oracles and deterministic random inputs.
#include <cmath>
#include <cstdint>
#include <random>

#include "homshift/numkernel.hpp"

namespace homshift::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform on [lo, hi) from the top 53 bits, independent of the standard
  // library's distribution implementations.
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(engine_() >> 11) * 0x1.0p-53);
  }
  int integer(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  Complex complex(double radius = 1.0) { return {uniform(-radius, radius), uniform(-radius, radius)}; }

 private:
  std::mt19937_64 engine_;
};

inline OperatorMatrix random_matrix(const TruncationWindow& w, Rng& rng, double radius = 1.0) {
  OperatorMatrix a = OperatorMatrix::zero(w);
  for (auto& x : a.data()) x = rng.complex(radius);
  return a;
}

inline double max_abs_diff(const OperatorMatrix& a, const OperatorMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

// Max entry difference over interior rows and columns.
inline double interior_max_diff(const OperatorMatrix& a, const OperatorMatrix& b, const TruncationWindow& w) {
  double m = 0.0;
  for (int i = w.first(); i <= w.last(); ++i) {
    if (!w.is_interior(i)) continue;
    for (int j = w.first(); j <= w.last(); ++j) {
      if (w.is_interior(j)) m = std::max(m, std::abs(a.get(i, j) - b.get(i, j)));
    }
  }
  return m;
}

// sum_{k<=order} A^k / k!
inline OperatorMatrix taylor_exp(const OperatorMatrix& a, int order) {
  OperatorMatrix sum = OperatorMatrix::identity(a.window(), a.basis());
  OperatorMatrix term = sum;
  for (int k = 1; k <= order; ++k) {
    term = term * a;
    term *= Complex(1.0 / k);
    sum += term;
  }
  return sum;
}

// Gamma by Stirling's series at a shifted argument, pulled back with the
// recurrence Gamma(z) = Gamma(z + k) / (z (z+1) ... (z+k-1)).
inline Complex stirling_gamma(Complex z) {
  constexpr int kShift = 20;
  Complex prod = 1.0;
  Complex w = z;
  for (int k = 0; k < kShift; ++k) {
    prod *= w;
    w += 1.0;
  }
  // Bernoulli numbers B_{2j} / (2j (2j-1)).
  static constexpr double coeff[] = {1.0 / 12.0,         -1.0 / 360.0,      1.0 / 1260.0,
                                     -1.0 / 1680.0,      1.0 / 1188.0,      -691.0 / 360360.0,
                                     1.0 / 156.0,        -3617.0 / 122400.0};
  Complex series = 0.0;
  Complex wpow = 1.0 / w;
  Complex w2inv = 1.0 / (w * w);
  for (double c : coeff) {
    series += c * wpow;
    wpow *= w2inv;
  }
  Complex log_gamma = (w - 0.5) * std::log(w) - w + 0.5 * std::log(2.0 * M_PI) + series;
  return std::exp(log_gamma) / prod;
}

}  // namespace homshift::testing
