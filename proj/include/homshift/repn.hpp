#pragma once

// Truncated realizations of the unitary representations R_{lambda,mu} of the
// universal cover of the Mobius group on spans of the monomials f_n(z) = z^n.

#include <cstddef>
#include <string_view>
#include <vector>

#include "homshift/mobius.hpp"
#include "homshift/numkernel.hpp"

namespace homshift {

enum class SeriesTag { HoloDiscrete, AntiHoloDiscrete, Principal, Complementary, ReducibleSum };

std::string_view series_name(SeriesTag tag) noexcept;

struct RepnParams {
  IndexSet index_set = IndexSet::bilateral;
  double lambda = 0.0;
  Complex mu{};

  // D+_lambda: Z+, mu = 0.
  static RepnParams holomorphic(double lambda) { return {IndexSet::unilateral, lambda, 0.0}; }
  // Re mu is fixed to (1 - lambda) / 2.
  static RepnParams principal(double lambda, double mu_imag) {
    return {IndexSet::bilateral, lambda, Complex((1.0 - lambda) / 2.0, mu_imag)};
  }
  static RepnParams complementary(double lambda, double mu) { return {IndexSet::bilateral, lambda, mu}; }
};

// HoloDiscrete, Principal or Complementary (checked in that order). The
// anti-holomorphic series is never returned here; it is obtained from the
// holomorphic one through the sharp construction. Throws ParameterError naming
// the violated constraint for parameters outside every series.
SeriesTag classify_series(const RepnParams& p);

// Complexified Lie algebra elements; e = (L - iM)/2 and f = (L + iM)/2.
enum class AlgebraElement { h, e, f, L, M };

std::string_view algebra_name(AlgebraElement x) noexcept;

AlgebraElement to_algebra(Generator g) noexcept;

struct CoefficientVector {
  TruncationWindow window;
  std::vector<Complex> coeffs;

  explicit CoefficientVector(TruncationWindow w) : window(w), coeffs(w.size()) {}
  Complex& operator[](int n) { return coeffs[window.position(n)]; }
  Complex operator[](int n) const { return coeffs[window.position(n)]; }
  static CoefficientVector basis(TruncationWindow w, int n);
};

// Monomial-basis matrix of dR(X):
//   dR(h) f_n = -i(2n + lambda) f_n
//   dR(e) f_n = (mu - n) f_{n-1}         (dropped when n-1 leaves the window)
//   dR(f) f_n = (lambda + mu + n) f_{n+1} (dropped at the upper edge)
//   dR(L) = dR(e) + dR(f),  dR(M) = i(dR(e) - dR(f)).
// Throws ParameterError for unclassifiable parameters or a window whose kind
// differs from the index set.
OperatorMatrix generator_matrix(const RepnParams& p, AlgebraElement x, const TruncationWindow& w);

// Ordered product of exp(t_i dR(X_i)) over the path segments. Accurate on
// the interior of w only.
OperatorMatrix rep_matrix(const RepnParams& p, const GroupPath& path, const TruncationWindow& w);

// R#(g) = R(g*), computed as rep_matrix(p, star_path(path), w). Applied to the
// holomorphic series it realizes the anti-holomorphic series.
OperatorMatrix rep_matrix_sharp(const RepnParams& p, const GroupPath& path, const TruncationWindow& w);

// Diagonal matrix of ||f_n||^2.
OperatorMatrix gram(const RepnParams& p, const TruncationWindow& w);

// interior_norm(R^H G R - G).
double unitarity_defect(const RepnParams& p, const GroupPath& path, const TruncationWindow& w);

// Smallest power of two >= 8 * window size.
std::size_t default_oracle_grid(const TruncationWindow& w);

// Evaluates (R(g)F)(z) = (phi'(z))^{eta_plus} conj(phi'(z))^{eta_minus} F(phi(z)),
// phi = phi_{g^{-1}}, on the unit-circle grid and reads off the coefficients of
// the window by FFT. Principal logarithms throughout, which requires
// |beta(phi)| <= 0.3. For unilateral input the negative-index coefficients are
// checked to be below 1e-10 and dropped. Throws ParameterError for a grid
// whose Nyquist band carries coefficients above 1e-9.
CoefficientVector circle_rep_oracle(const RepnParams& p, const MobiusElement& phi_inv,
                                    Complex eta_plus, Complex eta_minus,
                                    const CoefficientVector& f, std::size_t grid_size);

// Column-by-column oracle realization of rep_matrix(p, path, w), with
// eta_plus = (lambda + mu)/2 and eta_minus = mu/2. A grid size of 0 selects
// default_oracle_grid(w).
OperatorMatrix oracle_rep_matrix(const RepnParams& p, const GroupPath& path,
                                 const TruncationWindow& w, std::size_t grid_size = 0);

// Generators of D-_{2-lambda} (+) D+_lambda in the basis
//   g_n = (f_{-1-n}, 0) for n < 0,  (0, f_n) for n >= 0:
//   dR(h) g_n = -i(2n + lambda) g_n
//   dR(e) g_n = (1 - lambda - n) g_{n-1} (n < 0),  0 (n = 0),  -n g_{n-1} (n > 0)
//   dR(f) g_n = (n + 1) g_{n+1} (n < -1),  0 (n = -1),  (lambda + n) g_{n+1} (n > -1)
// Requires a bilateral window and lambda in (0, 2).
OperatorMatrix reducible_generator_matrix(double lambda, AlgebraElement x, const TruncationWindow& w);
OperatorMatrix reducible_rep_matrix(double lambda, const GroupPath& path, const TruncationWindow& w);
// ||g_n||^2: norms of H^{2-lambda,0} on the negative half, H^{lambda,0} on the rest.
OperatorMatrix reducible_gram(double lambda, const TruncationWindow& w);

// A concrete representation of the cover on a window: one of the series
// R_{lambda,mu}, its sharp twist, or the reducible sum above.
class Representation {
 public:
  enum class Kind { plain, sharp, reducible };

  static Representation plain(const RepnParams& p);
  static Representation sharp(const RepnParams& p);
  static Representation reducible(double lambda);

  Kind kind() const noexcept { return kind_; }
  const RepnParams& params() const noexcept { return params_; }
  double lambda() const noexcept { return params_.lambda; }
  IndexSet index_set() const noexcept { return params_.index_set; }
  SeriesTag series() const;

  OperatorMatrix generator(AlgebraElement x, const TruncationWindow& w) const;
  OperatorMatrix rep(const GroupPath& path, const TruncationWindow& w) const;
  OperatorMatrix gram(const TruncationWindow& w) const;

 private:
  Representation(Kind kind, RepnParams params) : kind_(kind), params_(params) {}
  Kind kind_;
  RepnParams params_;
};

}  // namespace homshift
