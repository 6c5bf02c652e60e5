#include "homshift/inductive.hpp"

#include <cmath>
#include <sstream>

#include "homshift/errors.hpp"

namespace homshift {

IsotypicComponent::IsotypicComponent(TruncationWindow window, int m)
    : window_(window), m_(m), coeffs_(window.size()) {}

void IsotypicComponent::set(int n, Complex value) {
  if (!present(n)) throw ParameterError("IsotypicComponent: index " + std::to_string(n) + " has no target in the window");
  coeffs_[window_.position(n)] = value;
}

OperatorMatrix IsotypicComponent::to_matrix(BasisTag basis) const {
  OperatorMatrix out = OperatorMatrix::zero(window_, basis);
  for (int n = window_.first(); n <= window_.last(); ++n)
    if (present(n)) out.at(n - m_, n) = coeffs_[window_.position(n)];
  return out;
}

IsotypicComponent isotypic_component(const OperatorMatrix& t, int m) {
  IsotypicComponent c(t.window(), m);
  const auto& w = t.window();
  for (int n = w.first(); n <= w.last(); ++n)
    if (c.present(n)) c.set(n, t.at(n - m, n));
  return c;
}

TeTf te_tf_coefficients(const IsotypicComponent& a, const RepnParams& p) {
  const auto& w = a.window();
  const int m = a.m();
  const Complex mu = p.mu;
  const Complex lm = p.lambda + p.mu;
  IsotypicComponent te(w, m + 1);
  IsotypicComponent tf(w, m - 1);
  for (int n = w.first(); n <= w.last(); ++n) {
    const double nd = n;
    if (te.present(n)) te.set(n, (mu - nd + static_cast<double>(m)) * a(n) - (mu - nd) * a(n - 1));
    if (tf.present(n)) tf.set(n, (lm + nd - static_cast<double>(m)) * a(n) - (lm + nd) * a(n + 1));
  }
  return {std::move(te), std::move(tf)};
}

Complex lemma_identity(double lambda, Complex mu, int m, int n, LemmaVariant which) {
  if (m == 0) throw ParameterError("lemma_identity: m must be nonzero");
  const double md = m;
  const double nd = n;
  const Complex lm = lambda + mu;
  if (which == LemmaVariant::mu_leading) {
    return -(mu - nd) * (lm + nd - 1.0) + 2.0 * (mu - nd + md) * (lm + nd - md - 1.0) -
           (mu - nd + 2.0 * md) * (lm + nd - 2.0 * md - 1.0);
  }
  return -(lm + nd) * (mu - nd - 1.0) + 2.0 * (lm + nd - md) * (mu - nd + md - 1.0) -
         (lm + nd - 2.0 * md) * (mu - nd + 2.0 * md - 1.0);
}

std::string_view fit_branch_name(FitBranch b) noexcept {
  switch (b) {
    case FitBranch::T2branch:
      return "T2branch";
    case FitBranch::T3branch:
      return "T3branch";
    case FitBranch::neither:
      break;
  }
  return "neither";
}

AminusOneFit classify_a_minus1(std::span<const std::pair<int, Complex>> samples, const RepnParams& p,
                               double tolerance) {
  if (p.index_set != IndexSet::bilateral) throw ParameterError("classify_a_minus1: needs bilateral parameters");
  if (samples.size() < 3) throw ParameterError("classify_a_minus1: needs at least 3 samples");
  const Complex mu = p.mu;
  const double count = static_cast<double>(samples.size());
  double nbar = 0.0;
  Complex ybar{};
  for (const auto& [n, an] : samples) {
    nbar += n;
    ybar += an * (mu - static_cast<double>(n) - 1.0);
  }
  nbar /= count;
  ybar /= count;
  double snn = 0.0;
  Complex sny{};
  for (const auto& [n, an] : samples) {
    const double dn = n - nbar;
    snn += dn * dn;
    sny += dn * (an * (mu - static_cast<double>(n) - 1.0) - ybar);
  }
  if (!(snn > 0.0)) throw ParameterError("classify_a_minus1: fit matrix is rank-deficient (indices coincide)");
  // y = a - b n  =>  slope -b.
  const Complex b = -sny / snn;
  const Complex a = ybar + b * nbar;
  double residual = 0.0;
  for (const auto& [n, an] : samples) {
    const Complex y = an * (mu - static_cast<double>(n) - 1.0);
    residual = std::max(residual, std::abs(y - (a - b * static_cast<double>(n))));
  }

  AminusOneFit fit{a, b, residual, FitBranch::neither, false};
  const double scale = std::max(std::abs(a), std::abs(b));
  if (!(residual <= tolerance) || scale == 0.0) return fit;
  const bool t2 = std::abs(a + b * (1.0 - mu)) <= tolerance * scale;
  const bool t3 = std::abs(a + b * (p.lambda + mu)) <= tolerance * scale;
  if (t2 && t3) {
    fit.branch = FitBranch::T2branch;
    fit.tie = std::abs(mu - (1.0 - p.lambda) / 2.0) <= tolerance;
  } else if (t2) {
    fit.branch = FitBranch::T2branch;
  } else if (t3) {
    fit.branch = FitBranch::T3branch;
  }
  return fit;
}

DefectReport normalizer_defect(const OperatorMatrix& t, const OperatorMatrix& r, const TruncationWindow& w,
                               double tolerance, nlohmann::ordered_json context) {
  require_conformal(t, r);
  w.require_interior();
  const int dim = static_cast<int>(t.dim());

  // T must occupy a single diagonal, m = +1 or -1.
  int step = 0;
  for (int m = -(dim - 1); m <= dim - 1; ++m) {
    const OperatorMatrix part = isotypic_component(t, m).to_matrix();
    if (part.frobenius() == 0.0) continue;
    if (step != 0 || std::abs(m) != 1) throw ParameterError("normalizer_defect: T must be a step +-1 shift");
    step = m;
  }
  if (step == 0) throw ParameterError("normalizer_defect: T is zero");
  const IsotypicComponent a = isotypic_component(t, step);

  // S = R T R^{-1}  <=>  R^H S^H = (R T)^H
  const OperatorMatrix s = solve(r.adjoint(), (r * t).adjoint()).x.adjoint();
  double value = interior_norm(commutator(s, t), w);

  // powers[k][pos(n)]: coefficient of T^k at column n.
  std::vector<std::vector<Complex>> powers(static_cast<std::size_t>(dim), std::vector<Complex>(w.size(), 1.0));
  for (int k = 1; k < dim; ++k)
    for (int n = w.first(); n <= w.last(); ++n)
      powers[k][w.position(n)] = powers[k - 1][w.position(n)] * a(n - (k - 1) * step);

  const std::vector<Complex> nothing(w.size(), Complex{});
  for (int m = -(dim - 1); m <= dim - 1; ++m) {
    const IsotypicComponent c = isotypic_component(s, m);
    const bool along = m == 0 || (m % step == 0 && m / step > 0);
    const std::vector<Complex>& model = along ? powers[static_cast<std::size_t>(m / step)] : nothing;
    Complex cross{};
    double model_sq = 0.0;
    for (int n = w.first(); n <= w.last(); ++n) {
      if (!w.is_interior(n) || !w.is_interior(n - m)) continue;
      const Complex pm = model[w.position(n)];
      cross += std::conj(pm) * c(n);
      model_sq += std::norm(pm);
    }
    const Complex scale = model_sq > 0.0 ? cross / model_sq : Complex{};
    double resid_sq = 0.0;
    for (int n = w.first(); n <= w.last(); ++n) {
      if (!w.is_interior(n) || !w.is_interior(n - m)) continue;
      resid_sq += std::norm(c(n) - scale * model[w.position(n)]);
    }
    value += std::sqrt(resid_sq);
  }
  return DefectReport::make("normalizer", value, tolerance, std::move(context));
}

FlipRecord sharp_isotypic_flip(const OperatorMatrix& t, int m, const RepnParams& p, double angle, double tolerance) {
  const auto& w = t.window();
  const GroupPath rotation({{Generator::h, angle}});
  const OperatorMatrix r_sharp = rep_matrix_sharp(p, rotation, w);
  const OperatorMatrix r_plain = rep_matrix(p, rotation, w);
  const OperatorMatrix r_sharp_inv = rep_matrix_sharp(p, rotation.inverse(), w);
  const OperatorMatrix r_plain_inv = rep_matrix(p, rotation.inverse(), w);
  const IsotypicComponent base = isotypic_component(t, m);
  const IsotypicComponent sharp = isotypic_component(r_sharp * t * r_sharp_inv, m);
  const IsotypicComponent plain = isotypic_component(r_plain * t * r_plain_inv, m);
  // chi_m(exp t h) = e^{2imt}
  const Complex chi_minus = std::polar(1.0, -2.0 * m * angle);
  const Complex chi_plus = std::polar(1.0, 2.0 * m * angle);
  FlipRecord rec{m, 0.0, 0.0, false};
  for (int n = w.first(); n <= w.last(); ++n) {
    if (!base.present(n)) continue;
    rec.sharp_error = std::max(rec.sharp_error, std::abs(sharp(n) - chi_minus * base(n)));
    rec.plain_error = std::max(rec.plain_error, std::abs(plain(n) - chi_plus * base(n)));
  }
  rec.pass = rec.sharp_error <= tolerance && rec.plain_error <= tolerance;
  return rec;
}

}  // namespace homshift
