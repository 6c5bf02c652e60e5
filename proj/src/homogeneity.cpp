#include "homshift/homogeneity.hpp"

#include <cmath>

#include "homshift/errors.hpp"
#include "homshift/shifts.hpp"

namespace homshift {

OperatorMatrix mobius_of_operator(const MobiusElement& phi, const OperatorMatrix& t, const SolveOptions& options) {
  const OperatorMatrix ident = OperatorMatrix::identity(t.window(), t.basis());
  OperatorMatrix numerator = t;
  numerator.add_scaled(-phi.beta(), ident);
  OperatorMatrix resolvent = ident;
  resolvent.add_scaled(-std::conj(phi.beta()), t);
  // Both factors are polynomials in T, so they commute and a left solve
  // gives the same operator as right-multiplying by the inverse.
  SolveResult solved = solve(resolvent, numerator, options);
  solved.x *= phi.alpha();
  return std::move(solved.x);
}

DefectReport homogeneity_defect(const OperatorMatrix& t, const OperatorMatrix& r, const MobiusElement& phi,
                                const TruncationWindow& w, double tolerance, nlohmann::ordered_json context) {
  const OperatorMatrix lhs = mobius_of_operator(phi, t);
  const OperatorMatrix rhs = solve(r, t * r).x;
  return DefectReport::make("homogeneity", interior_norm(lhs - rhs, w), tolerance, std::move(context));
}

namespace {

OperatorMatrix conjugate_by_flow(const OperatorMatrix& t, const Representation& rep, Generator g, double s,
                                 const TruncationWindow& w) {
  const OperatorMatrix forward = rep.rep(GroupPath({{g, s}}), w);
  const OperatorMatrix backward = rep.rep(GroupPath({{g, -s}}), w);
  return forward * t * backward;
}

OperatorMatrix central_difference(const OperatorMatrix& t, const Representation& rep, Generator g, double s,
                                  const TruncationWindow& w) {
  OperatorMatrix d = conjugate_by_flow(t, rep, g, s, w) - conjugate_by_flow(t, rep, g, -s, w);
  d *= 1.0 / (2.0 * s);
  return d;
}

}  // namespace

KappaDerivative kappa_flow_derivative(const OperatorMatrix& t, AlgebraElement x, const Representation& rep,
                                      const TruncationWindow& w, double step) {
  if (!(step >= 1e-6 && step <= 1e-2)) throw ParameterError("kappa_flow_derivative: step must lie in [1e-6, 1e-2]");
  const Complex i(0.0, 1.0);
  OperatorMatrix fd = OperatorMatrix::zero(w);
  switch (x) {
    case AlgebraElement::h:
      fd = central_difference(t, rep, Generator::h, step, w);
      break;
    case AlgebraElement::L:
      fd = central_difference(t, rep, Generator::L, step, w);
      break;
    case AlgebraElement::M:
      fd = central_difference(t, rep, Generator::M, step, w);
      break;
    case AlgebraElement::e:
    case AlgebraElement::f: {
      const Complex sign = x == AlgebraElement::e ? -i : i;
      fd = central_difference(t, rep, Generator::L, step, w);
      fd.add_scaled(sign, central_difference(t, rep, Generator::M, step, w));
      fd *= 0.5;
      break;
    }
  }
  OperatorMatrix comm = commutator(rep.generator(x, w), t);
  const double gap = interior_norm(fd - comm, w);
  return {std::move(fd), std::move(comm), gap};
}

OperatorMatrix kappa_target(const OperatorMatrix& t, AlgebraElement x) {
  const Complex i(0.0, 1.0);
  const OperatorMatrix ident = OperatorMatrix::identity(t.window(), t.basis());
  const OperatorMatrix t2 = t * t;
  switch (x) {
    case AlgebraElement::L:
      return t2 - ident;
    case AlgebraElement::M:
      return -i * (t2 + ident);
    case AlgebraElement::e:
      return Complex(-1.0) * ident;
    case AlgebraElement::f:
      return t2;
    case AlgebraElement::h:
      break;
  }
  return Complex(0.0, -2.0) * t;
}

DefectReport reducible_lambda_check(double lambda, Complex r, const TruncationWindow& w, double tolerance) {
  if (w.kind() != IndexSet::bilateral || w.extent() < 4)
    throw ParameterError("reducible_lambda_check: needs a bilateral window with N >= 4");
  const OperatorMatrix t = reducible_shift(ReducibleShiftSpec(lambda, r), w);
  const OperatorMatrix f = reducible_generator_matrix(lambda, AlgebraElement::f, w);
  const OperatorMatrix diff = commutator(f, t) - t * t;
  nlohmann::ordered_json context;
  context["lambda"] = lambda;
  context["r_re"] = r.real();
  context["r_im"] = r.imag();
  context["N"] = w.extent();
  context["entry"] = "g1<-g-1";
  return DefectReport::make("reducible-lambda", std::abs(diff.at(1, -1)), tolerance, std::move(context));
}

}  // namespace homshift
