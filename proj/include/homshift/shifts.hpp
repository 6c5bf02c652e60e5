#pragma once

// Weighted shifts, the canonical homogeneous shifts T1, T1*, T2, T3 and the
// reducible-case shift, together with their weight sequences.

#include <functional>
#include <string_view>
#include <vector>

#include "homshift/numkernel.hpp"
#include "homshift/repn.hpp"

namespace homshift {

// Shift with T f_n = a_n f_{n-step}; coefficients whose target leaves the
// window are absent (the operator sends f_n to 0 there).
class WeightedShiftSpec {
 public:
  WeightedShiftSpec(TruncationWindow window, int step, std::function<Complex(int)> coefficient,
                    BasisTag basis = BasisTag::monomial);

  const TruncationWindow& window() const noexcept { return window_; }
  int step() const noexcept { return step_; }
  BasisTag basis() const noexcept { return basis_; }
  bool present(int n) const noexcept { return window_.contains(n) && window_.contains(n - step_); }
  // Zero when absent.
  Complex coefficient(int n) const noexcept;
  double max_abs() const noexcept;

  OperatorMatrix to_matrix() const;

 private:
  TruncationWindow window_;
  int step_;
  BasisTag basis_;
  std::vector<Complex> coefficients_;
};

enum class ShiftKind { T1, T1star, T2, T3 };

std::string_view shift_name(ShiftKind kind) noexcept;

// Monomial-basis matrices:
//   T1:     f_n -> f_{n+1}                          (Z+)
//   T1star: f_n -> n/(lambda+n-1) f_{n-1}, f_0 -> 0 (Z+)
//   T2:     f_n -> f_{n+1}                          (Z)
//   T3:     f_n -> (lambda+mu+n)/(n+1-mu) f_{n+1}   (Z, mu not an integer)
// Throws ParameterError when the kind does not fit the parameters.
OperatorMatrix canonical_shift(ShiftKind kind, const RepnParams& p, const TruncationWindow& w);

// Which of the two bilateral solution families a weight refers to.
enum class WeightBranch { T2, T3 };

// Weight w_n of the homogeneous shift associated with a series, with respect
// to the orthonormal basis of the representation space:
//   holo:          sqrt((1+n)/(lambda+n)),            n >= 0
//   antiholo:      sqrt(n/(1-lambda+n)),              n <= -1
//   principal:     1 (T2) or (lambda+mu+n)/(n+1-mu) (T3)
//   complementary: sqrt((1-mu+n)/(lambda+mu+n)) (T2) or its reciprocal (T3)
//   reducible:     1 for n != -1, coupling at n = -1
// The T3 principal weights are complex; only their moduli (all 1) matter up
// to unitary equivalence. Throws ParameterError for n outside the index set.
Complex weight_sequence(SeriesTag series, const RepnParams& p, int n,
                        WeightBranch branch = WeightBranch::T2, Complex coupling = {});

// G^{1/2} T G^{-1/2} for diagonal positive G: the matrix of T in the basis
// x_n = f_n / ||f_n||.
OperatorMatrix to_orthonormal(const OperatorMatrix& t, const OperatorMatrix& g);

struct WeightEntry {
  int n;
  Complex w;
};

// Reads the weights of a shift in orthonormal form. step = -1 (forward shift
// T x_n = w_n x_{n+1}) labels by the source index; step = +1 (backward shift
// on Z+) uses the reflected labels x_n = f_{-n}, n <= -1.
std::vector<WeightEntry> shift_weights(const OperatorMatrix& t, int step);

// Coupling parameter r of the reducible-case shift on D-_{2-lambda} (+) D+_lambda.
class ReducibleShiftSpec {
 public:
  // lambda in (0, 2), |r| <= 10.
  ReducibleShiftSpec(double lambda, Complex r);

  double lambda() const noexcept { return lambda_; }
  Complex r() const noexcept { return r_; }
  // a_n = (1+n)/(lambda+n) for n < -1, r for n = -1, 1 for n > -1.
  Complex coefficient(int n) const;

 private:
  double lambda_;
  Complex r_;
};

// T g_n = a_n g_{n+1} in the g_n basis. The blocks satisfy T12 = 0 and T21 has
// rank <= 1 (only g_{-1} -> r g_0 crosses between the summands).
OperatorMatrix reducible_shift(const ReducibleShiftSpec& spec, const TruncationWindow& w);

}  // namespace homshift
