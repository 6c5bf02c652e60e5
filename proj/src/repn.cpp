#include "homshift/repn.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "homshift/errors.hpp"
#include "homshift/specialfn.hpp"

namespace homshift {

namespace {

constexpr double kLineTolerance = 1e-12;

void require_window(IndexSet index_set, const TruncationWindow& w, const char* who) {
  if (w.kind() != index_set) {
    throw ParameterError(std::string(who) + ": window kind does not match the index set (" +
                         (index_set == IndexSet::bilateral ? "Z" : "Z+") + ")");
  }
}

// Assembles h, e, f matrices from per-index coefficient rules and forms L, M.
template <class EFn, class FFn>
OperatorMatrix assemble_generator(AlgebraElement x, const TruncationWindow& w, double lambda,
                                  EFn e_coeff, FFn f_coeff) {
  OperatorMatrix out = OperatorMatrix::zero(w);
  const Complex i(0.0, 1.0);
  // Weights of e and f in the requested element.
  Complex we{}, wf{};
  switch (x) {
    case AlgebraElement::h:
      for (int n = w.first(); n <= w.last(); ++n) out.at(n, n) = -i * (2.0 * n + lambda);
      return out;
    case AlgebraElement::e:
      we = 1.0;
      break;
    case AlgebraElement::f:
      wf = 1.0;
      break;
    case AlgebraElement::L:
      we = 1.0;
      wf = 1.0;
      break;
    case AlgebraElement::M:
      we = i;
      wf = -i;
      break;
  }
  for (int n = w.first(); n <= w.last(); ++n) {
    if (we != Complex{} && w.contains(n - 1)) out.at(n - 1, n) = we * e_coeff(n);
    if (wf != Complex{} && w.contains(n + 1)) out.at(n + 1, n) = wf * f_coeff(n);
  }
  return out;
}

template <class GenFn>
OperatorMatrix exp_along_path(const GroupPath& path, const TruncationWindow& w, GenFn generator) {
  OperatorMatrix acc = OperatorMatrix::identity(w);
  bool first = true;
  for (const auto& seg : path.segments()) {
    OperatorMatrix step = mat_exp(Complex(seg.time) * generator(to_algebra(seg.generator)));
    acc = first ? std::move(step) : acc * step;
    first = false;
  }
  return acc;
}

void require_reducible(double lambda, const TruncationWindow& w) {
  if (w.kind() != IndexSet::bilateral)
    throw ParameterError("reducible representation needs a bilateral window");
  if (!(lambda > 0.0 && lambda < 2.0))
    throw ParameterError("reducible representation needs lambda in (0, 2)");
}

}  // namespace

std::string_view series_name(SeriesTag tag) noexcept {
  switch (tag) {
    case SeriesTag::HoloDiscrete:
      return "holo";
    case SeriesTag::AntiHoloDiscrete:
      return "antiholo";
    case SeriesTag::Principal:
      return "principal";
    case SeriesTag::Complementary:
      return "complementary";
    case SeriesTag::ReducibleSum:
      return "reducible";
  }
  return "?";
}

std::string_view algebra_name(AlgebraElement x) noexcept {
  switch (x) {
    case AlgebraElement::h:
      return "h";
    case AlgebraElement::e:
      return "e";
    case AlgebraElement::f:
      return "f";
    case AlgebraElement::L:
      return "L";
    case AlgebraElement::M:
      return "M";
  }
  return "?";
}

AlgebraElement to_algebra(Generator g) noexcept {
  switch (g) {
    case Generator::h:
      return AlgebraElement::h;
    case Generator::L:
      return AlgebraElement::L;
    case Generator::M:
      break;
  }
  return AlgebraElement::M;
}

SeriesTag classify_series(const RepnParams& p) {
  const double lambda = p.lambda;
  const Complex mu = p.mu;
  std::ostringstream why;
  if (!std::isfinite(lambda) || !std::isfinite(mu.real()) || !std::isfinite(mu.imag()))
    throw ParameterError("classify_series: non-finite parameters");
  if (p.index_set == IndexSet::unilateral) {
    if (mu != Complex{}) {
      why << "index set Z+ requires mu = 0";
    } else if (!(lambda > 0.0)) {
      why << "holomorphic discrete series requires lambda > 0 (got " << lambda << ")";
    } else {
      return SeriesTag::HoloDiscrete;
    }
    throw ParameterError("classify_series: " + why.str());
  }
  const bool lambda_principal = lambda > -1.0 && lambda <= 1.0;
  if (lambda_principal && std::abs(mu.real() - (1.0 - lambda) / 2.0) <= kLineTolerance)
    return SeriesTag::Principal;
  if (mu.imag() == 0.0 && lambda > -1.0 && lambda < 1.0) {
    const double m = mu.real();
    if (m > 0.0 && m < 1.0 && m > -lambda && m < 1.0 - lambda) return SeriesTag::Complementary;
    why << "complementary series requires mu in (0,1) and (-lambda, 1-lambda) (got mu = " << m
        << ", lambda = " << lambda << ")";
  } else if (!lambda_principal) {
    why << "bilateral series require lambda in (-1, 1] (got " << lambda << ")";
  } else {
    why << "principal series requires Re mu = (1 - lambda)/2 = " << (1.0 - lambda) / 2.0
        << " (got " << mu.real() << "); complementary series requires real mu";
  }
  throw ParameterError("classify_series: " + why.str());
}

CoefficientVector CoefficientVector::basis(TruncationWindow w, int n) {
  CoefficientVector v(w);
  v[n] = 1.0;
  return v;
}

OperatorMatrix generator_matrix(const RepnParams& p, AlgebraElement x, const TruncationWindow& w) {
  classify_series(p);
  require_window(p.index_set, w, "generator_matrix");
  const Complex mu = p.mu;
  const double lambda = p.lambda;
  return assemble_generator(
      x, w, lambda, [&](int n) { return mu - static_cast<double>(n); },
      [&](int n) { return lambda + mu + static_cast<double>(n); });
}

OperatorMatrix rep_matrix(const RepnParams& p, const GroupPath& path, const TruncationWindow& w) {
  classify_series(p);
  require_window(p.index_set, w, "rep_matrix");
  return exp_along_path(path, w, [&](AlgebraElement x) { return generator_matrix(p, x, w); });
}

OperatorMatrix rep_matrix_sharp(const RepnParams& p, const GroupPath& path, const TruncationWindow& w) {
  return rep_matrix(p, star_path(path), w);
}

OperatorMatrix gram(const RepnParams& p, const TruncationWindow& w) {
  classify_series(p);
  const NormSequence norms = norm_sq_sequence(p, w);
  OperatorMatrix g = OperatorMatrix::zero(w);
  for (int n = w.first(); n <= w.last(); ++n) g.at(n, n) = norms(n);
  return g;
}

double unitarity_defect(const RepnParams& p, const GroupPath& path, const TruncationWindow& w) {
  const OperatorMatrix r = rep_matrix(p, path, w);
  const OperatorMatrix g = gram(p, w);
  return interior_norm(r.adjoint() * g * r - g, w);
}

std::size_t default_oracle_grid(const TruncationWindow& w) {
  std::size_t grid = 1;
  while (grid < 8 * w.size()) grid <<= 1;
  return grid;
}

CoefficientVector circle_rep_oracle(const RepnParams& p, const MobiusElement& phi_inv,
                                    Complex eta_plus, Complex eta_minus,
                                    const CoefficientVector& f, std::size_t grid_size) {
  const TruncationWindow& w = f.window;
  require_window(p.index_set, w, "circle_rep_oracle");
  if (!is_power_of_two(grid_size)) throw ParameterError("circle_rep_oracle: grid size must be a power of two");
  if (grid_size < 2 * w.size())
    throw ParameterError("circle_rep_oracle: grid too small for the window");
  if (std::abs(phi_inv.beta()) > 0.3)
    throw ParameterError("circle_rep_oracle: |beta| > 0.3, principal branches not valid");

  const Complex alpha = phi_inv.alpha();
  const Complex beta = phi_inv.beta();
  const Complex log_const = std::log(alpha) + std::log(1.0 - std::norm(beta));
  std::vector<Complex> samples(grid_size);
  for (std::size_t j = 0; j < grid_size; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(grid_size);
    const Complex z(std::cos(theta), std::sin(theta));
    const Complex log_deriv = log_const - 2.0 * std::log(1.0 - std::conj(beta) * z);
    const Complex multiplier = std::exp(eta_plus * log_deriv + eta_minus * std::conj(log_deriv));
    // F(phi(z)) by Horner in w and 1/w; |w| = 1 on the circle.
    const Complex wz = apply(phi_inv, z);
    Complex upper{};
    for (int n = w.last(); n >= 0; --n) upper = upper * wz + f[n];
    Complex lower{};
    if (w.first() < 0) {
      const Complex winv = 1.0 / wz;
      for (int n = w.first(); n <= -1; ++n) lower = (lower + f[n]) * winv;
    }
    samples[j] = multiplier * (upper + lower);
  }
  const std::vector<Complex> coeffs = circle_fft(samples);
  const std::size_t m = grid_size;
  auto coeff = [&](long k) { return coeffs[static_cast<std::size_t>((k % static_cast<long>(m) + static_cast<long>(m)) % static_cast<long>(m))]; };

  double tail = 0.0;
  const long half = static_cast<long>(m / 2);
  for (long k = half - static_cast<long>(m / 8); k <= half; ++k)
    tail = std::max({tail, std::abs(coeff(k)), std::abs(coeff(-k))});
  if (tail > 1e-9) {
    std::ostringstream msg;
    msg << "circle_rep_oracle: grid of " << m << " points too small (Nyquist-band coefficient " << tail << ")";
    throw ParameterError(msg.str());
  }

  CoefficientVector out(w);
  for (int n = w.first(); n <= w.last(); ++n) out[n] = coeff(n);
  if (w.kind() == IndexSet::unilateral) {
    for (long k = 1; k <= static_cast<long>(w.last()); ++k) {
      if (std::abs(coeff(-k)) > 1e-10) {
        std::ostringstream msg;
        msg << "circle_rep_oracle: negative-index coefficient " << -k << " has modulus "
            << std::abs(coeff(-k)) << " for a holomorphic input";
        throw NumericalError(msg.str());
      }
    }
  }
  return out;
}

OperatorMatrix oracle_rep_matrix(const RepnParams& p, const GroupPath& path,
                                 const TruncationWindow& w, std::size_t grid_size) {
  classify_series(p);
  if (grid_size == 0) grid_size = default_oracle_grid(w);
  const MobiusElement phi_inv = inverse(path_to_mobius(path));
  const Complex eta_plus = (p.lambda + p.mu) / 2.0;
  const Complex eta_minus = p.mu / 2.0;
  OperatorMatrix out = OperatorMatrix::zero(w);
  for (int n = w.first(); n <= w.last(); ++n) {
    const CoefficientVector column =
        circle_rep_oracle(p, phi_inv, eta_plus, eta_minus, CoefficientVector::basis(w, n), grid_size);
    for (int k = w.first(); k <= w.last(); ++k) out.at(k, n) = column[k];
  }
  return out;
}

OperatorMatrix reducible_generator_matrix(double lambda, AlgebraElement x, const TruncationWindow& w) {
  require_reducible(lambda, w);
  auto e_coeff = [lambda](int n) -> Complex {
    if (n < 0) return 1.0 - lambda - n;
    if (n == 0) return 0.0;
    return -static_cast<double>(n);
  };
  auto f_coeff = [lambda](int n) -> Complex {
    if (n < -1) return static_cast<double>(n + 1);
    if (n == -1) return 0.0;
    return lambda + n;
  };
  return assemble_generator(x, w, lambda, e_coeff, f_coeff);
}

OperatorMatrix reducible_rep_matrix(double lambda, const GroupPath& path, const TruncationWindow& w) {
  require_reducible(lambda, w);
  return exp_along_path(path, w, [&](AlgebraElement x) { return reducible_generator_matrix(lambda, x, w); });
}

OperatorMatrix reducible_gram(double lambda, const TruncationWindow& w) {
  require_reducible(lambda, w);
  const int extent = w.extent();
  const NormSequence lower = norm_sq_sequence(RepnParams::holomorphic(2.0 - lambda),
                                              TruncationWindow::unilateral(extent, 0));
  const NormSequence upper =
      norm_sq_sequence(RepnParams::holomorphic(lambda), TruncationWindow::unilateral(extent, 0));
  OperatorMatrix g = OperatorMatrix::zero(w);
  for (int n = w.first(); n <= w.last(); ++n) g.at(n, n) = n < 0 ? lower(-1 - n) : upper(n);
  return g;
}

Representation Representation::plain(const RepnParams& p) {
  classify_series(p);
  return Representation(Kind::plain, p);
}

Representation Representation::sharp(const RepnParams& p) {
  classify_series(p);
  return Representation(Kind::sharp, p);
}

Representation Representation::reducible(double lambda) {
  if (!(lambda > 0.0 && lambda < 2.0))
    throw ParameterError("reducible representation needs lambda in (0, 2)");
  return Representation(Kind::reducible, RepnParams{IndexSet::bilateral, lambda, 0.0});
}

SeriesTag Representation::series() const {
  switch (kind_) {
    case Kind::reducible:
      return SeriesTag::ReducibleSum;
    case Kind::sharp: {
      const SeriesTag base = classify_series(params_);
      return base == SeriesTag::HoloDiscrete ? SeriesTag::AntiHoloDiscrete : base;
    }
    case Kind::plain:
      break;
  }
  return classify_series(params_);
}

OperatorMatrix Representation::generator(AlgebraElement x, const TruncationWindow& w) const {
  switch (kind_) {
    case Kind::reducible:
      return reducible_generator_matrix(params_.lambda, x, w);
    case Kind::sharp:
      // Star on the algebra: h -> -h, L -> L, M -> -M, hence e <-> f.
      switch (x) {
        case AlgebraElement::h:
          return Complex(-1.0) * generator_matrix(params_, AlgebraElement::h, w);
        case AlgebraElement::M:
          return Complex(-1.0) * generator_matrix(params_, AlgebraElement::M, w);
        case AlgebraElement::e:
          return generator_matrix(params_, AlgebraElement::f, w);
        case AlgebraElement::f:
          return generator_matrix(params_, AlgebraElement::e, w);
        case AlgebraElement::L:
          break;
      }
      return generator_matrix(params_, AlgebraElement::L, w);
    case Kind::plain:
      break;
  }
  return generator_matrix(params_, x, w);
}

OperatorMatrix Representation::rep(const GroupPath& path, const TruncationWindow& w) const {
  switch (kind_) {
    case Kind::reducible:
      return reducible_rep_matrix(params_.lambda, path, w);
    case Kind::sharp:
      return rep_matrix_sharp(params_, path, w);
    case Kind::plain:
      break;
  }
  return rep_matrix(params_, path, w);
}

OperatorMatrix Representation::gram(const TruncationWindow& w) const {
  if (kind_ == Kind::reducible) return reducible_gram(params_.lambda, w);
  return homshift::gram(params_, w);
}

}  // namespace homshift
