#pragma once

#include <vector>

#include "homshift/numkernel.hpp"

namespace homshift {

struct RepnParams;

// Gamma function on the complex plane. Lanczos series for Re z >= 1/2,
// reflection formula below that. Throws ParameterError at the poles
// z = 0, -1, -2, ...
Complex complex_gamma(Complex z);

// Squared norms ||f_n||^2 = Gamma(1 - mu + n) / Gamma(lambda + conj(mu) + n)
// of the monomials f_n(z) = z^n, one value per window index.
class NormSequence {
 public:
  NormSequence(TruncationWindow window, std::vector<double> values);

  const TruncationWindow& window() const noexcept { return window_; }
  double operator()(int n) const noexcept { return values_[window_.position(n)]; }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  TruncationWindow window_;
  std::vector<double> values_;
};

// Anchored at n = 0 by direct gamma evaluation, then extended in both
// directions by the ratio ||f_{n+1}||^2 / ||f_n||^2 = (1 - mu + n) / (lambda +
// conj(mu) + n). Gamma is never evaluated at negative arguments. Throws
// ParameterError when a ratio is not a positive real (parameters outside the
// unitary range) or the window kind does not match the index set.
NormSequence norm_sq_sequence(const RepnParams& params, const TruncationWindow& w);

}  // namespace homshift
