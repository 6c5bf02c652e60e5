#include "homshift/shifts.hpp"

#include <cmath>
#include <sstream>

#include "homshift/errors.hpp"

namespace homshift {

WeightedShiftSpec::WeightedShiftSpec(TruncationWindow window, int step,
                                     std::function<Complex(int)> coefficient, BasisTag basis)
    : window_(window), step_(step), basis_(basis), coefficients_(window.size()) {
  for (int n = window_.first(); n <= window_.last(); ++n) {
    if (!present(n)) continue;
    const Complex a = coefficient(n);
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
      throw ParameterError("WeightedShiftSpec: non-finite coefficient at n = " + std::to_string(n));
    coefficients_[window_.position(n)] = a;
  }
}

Complex WeightedShiftSpec::coefficient(int n) const noexcept {
  return present(n) ? coefficients_[window_.position(n)] : Complex{};
}

double WeightedShiftSpec::max_abs() const noexcept {
  double best = 0.0;
  for (const auto& a : coefficients_) best = std::max(best, std::abs(a));
  return best;
}

OperatorMatrix WeightedShiftSpec::to_matrix() const {
  OperatorMatrix t = OperatorMatrix::zero(window_, basis_);
  for (int n = window_.first(); n <= window_.last(); ++n)
    if (present(n)) t.at(n - step_, n) = coefficients_[window_.position(n)];
  return t;
}

std::string_view shift_name(ShiftKind kind) noexcept {
  switch (kind) {
    case ShiftKind::T1:
      return "T1";
    case ShiftKind::T1star:
      return "T1star";
    case ShiftKind::T2:
      return "T2";
    case ShiftKind::T3:
      return "T3";
  }
  return "?";
}

namespace {

bool is_integer(Complex mu) { return mu.imag() == 0.0 && mu.real() == std::round(mu.real()); }

}  // namespace

OperatorMatrix canonical_shift(ShiftKind kind, const RepnParams& p, const TruncationWindow& w) {
  classify_series(p);
  if (w.kind() != p.index_set) throw ParameterError("canonical_shift: window kind does not match the index set");
  const double lambda = p.lambda;
  const Complex mu = p.mu;
  const bool unilateral = p.index_set == IndexSet::unilateral;
  switch (kind) {
    case ShiftKind::T1:
      if (!unilateral) throw ParameterError("canonical_shift: T1 lives on Z+");
      return WeightedShiftSpec(w, -1, [](int) { return Complex(1.0); }).to_matrix();
    case ShiftKind::T1star:
      if (!unilateral) throw ParameterError("canonical_shift: T1star lives on Z+");
      return WeightedShiftSpec(w, 1, [lambda](int n) { return Complex(n / (lambda + n - 1.0)); }).to_matrix();
    case ShiftKind::T2:
      if (unilateral) throw ParameterError("canonical_shift: T2 lives on Z");
      return WeightedShiftSpec(w, -1, [](int) { return Complex(1.0); }).to_matrix();
    case ShiftKind::T3:
      if (unilateral) throw ParameterError("canonical_shift: T3 lives on Z");
      if (is_integer(mu)) throw ParameterError("canonical_shift: T3 needs mu outside Z (pole at n = mu - 1)");
      return WeightedShiftSpec(w, -1, [&](int n) { return (lambda + mu + static_cast<double>(n)) / (n + 1.0 - mu); })
          .to_matrix();
  }
  throw ParameterError("canonical_shift: unknown kind");
}

Complex weight_sequence(SeriesTag series, const RepnParams& p, int n, WeightBranch branch, Complex coupling) {
  const double lambda = p.lambda;
  const Complex mu = p.mu;
  auto out_of_domain = [&](const char* domain) {
    std::ostringstream msg;
    msg << "weight_sequence: index " << n << " outside " << domain << " for the " << series_name(series)
        << " series";
    return ParameterError(msg.str());
  };
  switch (series) {
    case SeriesTag::HoloDiscrete:
      if (n < 0) throw out_of_domain("Z+");
      return std::sqrt((1.0 + n) / (lambda + n));
    case SeriesTag::AntiHoloDiscrete:
      if (n > -1) throw out_of_domain("Z-");
      return std::sqrt(n / (1.0 - lambda + n));
    case SeriesTag::Principal:
      if (branch == WeightBranch::T2) return 1.0;
      if (is_integer(mu)) throw ParameterError("weight_sequence: T3 branch needs mu outside Z");
      return (lambda + mu + static_cast<double>(n)) / (n + 1.0 - mu);
    case SeriesTag::Complementary: {
      const double m = mu.real();
      const double ratio = (1.0 - m + n) / (lambda + m + n);
      return std::sqrt(branch == WeightBranch::T2 ? ratio : 1.0 / ratio);
    }
    case SeriesTag::ReducibleSum:
      return n == -1 ? coupling : Complex(1.0);
  }
  throw ParameterError("weight_sequence: unknown series");
}

OperatorMatrix to_orthonormal(const OperatorMatrix& t, const OperatorMatrix& g) {
  if (t.basis() != BasisTag::monomial) throw ShapeError("to_orthonormal: operator must be in the monomial basis");
  require_conformal(t, g);
  const auto& w = t.window();
  std::vector<double> root(w.size());
  for (int n = w.first(); n <= w.last(); ++n) {
    const Complex gn = g.at(n, n);
    if (!(gn.real() > 0.0) || gn.imag() != 0.0)
      throw ParameterError("to_orthonormal: Gram entry at n = " + std::to_string(n) + " is not positive");
    root[w.position(n)] = std::sqrt(gn.real());
  }
  for (int i = w.first(); i <= w.last(); ++i)
    for (int j = w.first(); j <= w.last(); ++j)
      if (i != j && g.at(i, j) != Complex{}) throw ParameterError("to_orthonormal: Gram matrix is not diagonal");
  OperatorMatrix out(w, BasisTag::orthonormal);
  for (int i = w.first(); i <= w.last(); ++i)
    for (int j = w.first(); j <= w.last(); ++j)
      out.at(i, j) = t.at(i, j) * (root[w.position(i)] / root[w.position(j)]);
  return out;
}

std::vector<WeightEntry> shift_weights(const OperatorMatrix& t, int step) {
  const auto& w = t.window();
  std::vector<WeightEntry> out;
  if (step == -1) {
    for (int n = w.first(); n < w.last(); ++n) out.push_back({n, t.at(n + 1, n)});
  } else if (step == 1) {
    for (int k = w.last(); k > w.first(); --k) out.push_back({-k, t.at(k - 1, k)});
  } else {
    throw ParameterError("shift_weights: step must be +1 or -1");
  }
  return out;
}

ReducibleShiftSpec::ReducibleShiftSpec(double lambda, Complex r) : lambda_(lambda), r_(r) {
  if (!(lambda > 0.0 && lambda < 2.0)) throw ParameterError("ReducibleShiftSpec: lambda must lie in (0, 2)");
  if (!(std::abs(r) <= 10.0)) throw ParameterError("ReducibleShiftSpec: |r| must be at most 10");
}

Complex ReducibleShiftSpec::coefficient(int n) const {
  if (n == -1) return r_;
  if (n > -1) return 1.0;
  const double denom = lambda_ + n;
  if (denom == 0.0) throw ParameterError("reducible_shift: pole of (1+n)/(lambda+n) at n = " + std::to_string(n));
  return (1.0 + n) / denom;
}

OperatorMatrix reducible_shift(const ReducibleShiftSpec& spec, const TruncationWindow& w) {
  if (w.kind() != IndexSet::bilateral) throw ParameterError("reducible_shift: needs a bilateral window");
  return WeightedShiftSpec(w, -1, [&](int n) { return spec.coefficient(n); }).to_matrix();
}

}  // namespace homshift
