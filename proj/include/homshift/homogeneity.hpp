#pragma once

// Mobius functional calculus on truncated operators and defect measurements
// for the homogeneity relation phi_g(T) = R(g)^{-1} T R(g).

#include "homshift/mobius.hpp"
#include "homshift/numkernel.hpp"
#include "homshift/report.hpp"
#include "homshift/repn.hpp"

namespace homshift {

// phi(T) = alpha (T - beta I)(I - conj(beta) T)^{-1}. Throws SingularityError
// when the resolvent factor is near-singular (condition estimate above
// options.max_condition), i.e. phi is not holomorphic on the numerical
// spectrum of T.
OperatorMatrix mobius_of_operator(const MobiusElement& phi, const OperatorMatrix& t,
                                  const SolveOptions& options = {});

constexpr double kHomogeneityTolerance = 1e-6;

// value = interior_norm(phi(T) - R^{-1} T R). R and phi must come from the
// same path (rep_matrix and path_to_mobius).
DefectReport homogeneity_defect(const OperatorMatrix& t, const OperatorMatrix& r, const MobiusElement& phi,
                                const TruncationWindow& w, double tolerance = kHomogeneityTolerance,
                                nlohmann::ordered_json context = nlohmann::ordered_json::object());

struct KappaDerivative {
  OperatorMatrix finite_difference;  // central difference of kappa(exp sX) T
  OperatorMatrix commutator;         // [dR(X), T]
  double route_gap;                  // interior norm of their difference
};

constexpr double kDefaultKappaStep = 1e-5;

// Derivative at the identity of g -> kappa(g) T = R(g) T R(g)^{-1} along X.
// Real X use a central difference with the given step; e and f are formed as
// (kappa(L) -+ i kappa(M)) / 2. Both routes are returned. step must lie in
// [1e-6, 1e-2].
KappaDerivative kappa_flow_derivative(const OperatorMatrix& t, AlgebraElement x, const Representation& rep,
                                      const TruncationWindow& w, double step = kDefaultKappaStep);

// Value kappa(X) T must take for a homogeneous T:
// L -> T^2 - I, M -> -i(T^2 + I), e -> -I, f -> T^2, h -> -2i T.
OperatorMatrix kappa_target(const OperatorMatrix& t, AlgebraElement x);

constexpr double kReducibleLambdaTolerance = 1e-12;

// Builds the reducible shift with coupling r and measures the single entry
// ([dR(f), T] - T^2) g_{-1} at g_1, which equals r (lambda - 1). Requires a
// bilateral window with N >= 4.
DefectReport reducible_lambda_check(double lambda, Complex r, const TruncationWindow& w,
                                    double tolerance = kReducibleLambdaTolerance);

}  // namespace homshift
