#pragma once

// Isotypic structure of operators under the rotation subgroup K, the
// coefficient recurrences for [dR(e), T] and [dR(f), T], the A_{-1}
// classifier and the normalizer (inductivity) defect.

#include <span>
#include <utility>
#include <vector>

#include "homshift/numkernel.hpp"
#include "homshift/report.hpp"
#include "homshift/repn.hpp"

namespace homshift {

// The m-th isotypic part of an operator: T f_n = a_n f_{n-m}. Conjugation by
// R(exp th) multiplies it by chi_m(exp th) = e^{2imt}. A coefficient exists
// for every window index n with n - m also in the window.
class IsotypicComponent {
 public:
  IsotypicComponent(TruncationWindow window, int m);

  int m() const noexcept { return m_; }
  const TruncationWindow& window() const noexcept { return window_; }
  bool present(int n) const noexcept { return window_.contains(n) && window_.contains(n - m_); }
  // Zero when absent.
  Complex operator()(int n) const noexcept { return present(n) ? coeffs_[window_.position(n)] : Complex{}; }
  void set(int n, Complex value);

  OperatorMatrix to_matrix(BasisTag basis = BasisTag::monomial) const;

 private:
  TruncationWindow window_;
  int m_;
  std::vector<Complex> coeffs_;
};

// Exact diagonal extraction: entries at (n - m, n).
IsotypicComponent isotypic_component(const OperatorMatrix& t, int m);

struct TeTf {
  IsotypicComponent te;  // [dR(e), T], in A_{m+1}
  IsotypicComponent tf;  // [dR(f), T], in A_{m-1}
};

// te_n = (mu - n + m) a_n - (mu - n) a_{n-1}
// tf_n = (lambda + mu + n - m) a_n - (lambda + mu + n) a_{n+1}
// with absent coefficients read as 0.
TeTf te_tf_coefficients(const IsotypicComponent& a, const RepnParams& p);

enum class LemmaVariant { mu_leading, lambda_leading };

// mu_leading: -(mu-n)(lambda+mu+n-1) + 2(mu-n+m)(lambda+mu+n-m-1) - (mu-n+2m)(lambda+mu+n-2m-1)
// lambda_leading: -(lambda+mu+n)(mu-n-1) + 2(lambda+mu+n-m)(mu-n+m-1) - (lambda+mu+n-2m)(mu-n+2m-1)
// Both are identically 2m^2. Throws ParameterError for m = 0.
Complex lemma_identity(double lambda, Complex mu, int m, int n, LemmaVariant which);

enum class FitBranch { T2branch, T3branch, neither };

std::string_view fit_branch_name(FitBranch b) noexcept;

struct AminusOneFit {
  Complex a;
  Complex b;
  double residual;  // max |a_n (mu - n - 1) - (a - b n)|
  FitBranch branch;
  bool tie;  // both factors vanish: T2 = T3, mu = (1 - lambda)/2
};

constexpr double kFitTolerance = 1e-8;

// Least-squares fit of a_n (mu - n - 1) = a - b n over the samples, then
// decides which factor of (a + b(1 - mu))(a + b(lambda + mu)) vanishes. A fit
// residual above the tolerance, or neither factor vanishing, gives neither.
// Requires a bilateral parameter set and at least 3 samples with distinct n.
AminusOneFit classify_a_minus1(std::span<const std::pair<int, Complex>> samples, const RepnParams& p,
                               double tolerance = kFitTolerance);

constexpr double kNormalizerTolerance = 1e-6;

// S = R T R^{-1}. value = interior_norm([S, T]) plus, for every isotypic
// component of S, the interior residual against the best scalar multiple of
// the matching power of T (T^k for the component in the direction of T's own
// step k times, the identity for m = 0, and 0 for every other component).
// T must be a step shift with step +1 or -1.
DefectReport normalizer_defect(const OperatorMatrix& t, const OperatorMatrix& r, const TruncationWindow& w,
                               double tolerance = kNormalizerTolerance,
                               nlohmann::ordered_json context = nlohmann::ordered_json::object());

struct FlipRecord {
  int m;
  double sharp_error;  // max |(kappa#(g) T)_m - chi_{-m}(g) T_m|
  double plain_error;  // max |(kappa(g) T)_m - chi_m(g) T_m|
  bool pass;
};

// Checks at g = exp(t h) that the m-th isotypic part transforms under the
// sharp representation with the character of -m, i.e. A_m and A_{-m} trade
// places between D+ and D-.
FlipRecord sharp_isotypic_flip(const OperatorMatrix& t, int m, const RepnParams& p, double angle,
                               double tolerance = 1e-12);

}  // namespace homshift
