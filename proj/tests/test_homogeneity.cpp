#include <cmath>

#include "doctest.h"
#include "homshift/errors.hpp"
#include "homshift/homogeneity.hpp"
#include "homshift/shifts.hpp"
#include "support.hpp"

using namespace homshift;
using testing::Rng;

namespace {

struct Case {
  const char* label;
  Representation rep;
  OperatorMatrix t;
  TruncationWindow w;
};

std::vector<Case> canonical_cases(int n, int pad) {
  std::vector<Case> out;
  auto wu = TruncationWindow::unilateral(n, pad);
  auto wb = TruncationWindow::bilateral(n, pad);
  auto h2 = RepnParams::holomorphic(2.0);
  auto pr = RepnParams::principal(0.3, 0.5);
  auto cp = RepnParams::complementary(0.4, 0.2);
  out.push_back({"T1 holo", Representation::plain(h2), canonical_shift(ShiftKind::T1, h2, wu), wu});
  out.push_back({"T1star sharp", Representation::sharp(h2), canonical_shift(ShiftKind::T1star, h2, wu), wu});
  out.push_back({"T2 principal", Representation::plain(pr), canonical_shift(ShiftKind::T2, pr, wb), wb});
  out.push_back({"T3 principal", Representation::plain(pr), canonical_shift(ShiftKind::T3, pr, wb), wb});
  out.push_back({"T2 complementary", Representation::plain(cp), canonical_shift(ShiftKind::T2, cp, wb), wb});
  out.push_back({"T3 complementary", Representation::plain(cp), canonical_shift(ShiftKind::T3, cp, wb), wb});
  out.push_back({"reducible", Representation::reducible(1.0), reducible_shift(ReducibleShiftSpec(1.0, 2.0), wb), wb});
  return out;
}

// The sharp twist changes the representation, not the Mobius element.
MobiusElement phi_for(const Representation&, const GroupPath& path) { return path_to_mobius(path); }

}  // namespace

TEST_CASE("mobius_of_operator examples") {
  Rng rng(51);
  auto w = TruncationWindow::bilateral(6, 1);
  auto t = testing::random_matrix(w, rng, 0.1);
  CHECK(testing::max_abs_diff(mobius_of_operator(MobiusElement::identity(), t), t) <= 1e-16);
  Complex a = std::polar(1.0, 0.7);
  CHECK(testing::max_abs_diff(mobius_of_operator(MobiusElement(a, 0.0), t), a * t) <= 1e-16);

  OperatorMatrix two = OperatorMatrix::identity(w);
  two *= Complex(2.0);
  CHECK_THROWS_AS(mobius_of_operator(MobiusElement(1.0, 0.5), two), SingularityError);
}

TEST_CASE("functional calculus on a circulant matches its eigenvalues") {
  auto w = TruncationWindow::bilateral(8, 0);
  const int size = static_cast<int>(w.size());
  OperatorMatrix c = OperatorMatrix::zero(w);
  for (int n = w.first(); n <= w.last(); ++n) c.at(n == w.last() ? w.first() : n + 1, n) = 1.0;

  Rng rng(52);
  for (int trial = 0; trial < 5; ++trial) {
    MobiusElement phi(std::polar(1.0, rng.uniform(-M_PI, M_PI)), std::polar(rng.uniform(0, 0.3), rng.uniform(-M_PI, M_PI)));
    auto fc = mobius_of_operator(phi, c);
    for (int k = 0; k < size; ++k) {
      Complex z = std::polar(1.0, 2.0 * M_PI * k / size);
      // C v = z v for v_n = z^{-n}.
      double err = 0.0;
      for (int row = w.first(); row <= w.last(); ++row) {
        Complex lhs = 0.0;
        for (int col = w.first(); col <= w.last(); ++col) lhs += fc.at(row, col) * std::pow(z, -col);
        err = std::max(err, std::abs(lhs - homshift::apply(phi, z) * std::pow(z, -row)));
      }
      CHECK(err <= 1e-11);
    }
  }
}

TEST_CASE("functional calculus respects composition") {
  Rng rng(53);
  auto w = TruncationWindow::bilateral(10, 2);
  for (int trial = 0; trial < 10; ++trial) {
    auto t = testing::random_matrix(w, rng);
    t *= Complex(1.0 / t.frobenius());
    MobiusElement phi(std::polar(1.0, rng.uniform(-3, 3)), std::polar(rng.uniform(0, 0.3), rng.uniform(-3, 3)));
    MobiusElement psi(std::polar(1.0, rng.uniform(-3, 3)), std::polar(rng.uniform(0, 0.3), rng.uniform(-3, 3)));
    auto lhs = mobius_of_operator(compose(phi, psi), t);
    auto rhs = mobius_of_operator(phi, mobius_of_operator(psi, t));
    CHECK(interior_norm(lhs - rhs, w) <= 1e-9);
  }
}

TEST_CASE("homogeneity examples") {
  auto p = RepnParams::holomorphic(2.0);
  auto w = TruncationWindow::unilateral(64, 24);
  auto t1 = canonical_shift(ShiftKind::T1, p, w);
  CHECK(homogeneity_defect(t1, rep_matrix(p, GroupPath{}, w), MobiusElement::identity(), w).value == 0.0);

  auto path = GroupPath::parse("L:0.1");
  auto report = homogeneity_defect(t1, rep_matrix(p, path, w), path_to_mobius(path), w);
  CHECK(report.pass);
  CHECK(report.value < 1e-6);

  auto pr = RepnParams::principal(0.3, 0.5);
  auto wb = TruncationWindow::bilateral(64, 16);
  auto t2 = canonical_shift(ShiftKind::T2, pr, wb);
  auto neg = homogeneity_defect(2.0 * t2, rep_matrix(pr, path, wb), path_to_mobius(path), wb);
  CHECK(neg.value > 1e-2);
  CHECK(!neg.pass);
}

TEST_CASE("homogeneity holds on the trusted block for every canonical shift") {
  const GroupPath paths[] = {GroupPath::parse("L:0.1"), GroupPath::parse("M:0.1"), GroupPath::parse("h:0.3"),
                             GroupPath::parse("L:0.1,M:-0.05,h:0.2")};
  for (auto& c : canonical_cases(64, 24)) {
    for (const auto& path : paths) {
      auto d = homogeneity_defect(c.t, c.rep.rep(path, c.w), phi_for(c.rep, path), c.w);
      INFO(c.label << " " << path.to_string());
      CHECK(d.value <= 1e-6);
    }
  }
}

TEST_CASE("homogeneity defect shrinks with padding") {
  auto path = GroupPath::parse("L:0.1");
  for (auto& c : canonical_cases(64, 4)) {
    auto r = c.rep.rep(path, c.w);
    auto phi = phi_for(c.rep, path);
    double d4 = homogeneity_defect(c.t, r, phi, c.w.with_padding(4)).value;
    double d24 = homogeneity_defect(c.t, r, phi, c.w.with_padding(24)).value;
    INFO(c.label);
    CHECK(d24 * 100.0 <= d4);
  }
}

TEST_CASE("infinitesimal relations") {
  const AlgebraElement xs[] = {AlgebraElement::L, AlgebraElement::M, AlgebraElement::e, AlgebraElement::f};
  for (auto& c : canonical_cases(64, 16)) {
    for (auto x : xs) {
      auto k = kappa_flow_derivative(c.t, x, c.rep, c.w);
      INFO(c.label << " " << algebra_name(x));
      CHECK(interior_norm(k.finite_difference - kappa_target(c.t, x), c.w) <= 1e-6);
      CHECK(interior_norm(k.commutator - kappa_target(c.t, x), c.w) <= 1e-10);
      CHECK(k.route_gap <= 1e-7);
    }
    auto kh = kappa_flow_derivative(c.t, AlgebraElement::h, c.rep, c.w);
    CHECK(interior_norm(kh.commutator - kappa_target(c.t, AlgebraElement::h), c.w) <= 1e-10);
    CHECK(kh.route_gap <= 1e-7);
  }
  auto c = canonical_cases(16, 4).front();
  CHECK_THROWS_AS(kappa_flow_derivative(c.t, AlgebraElement::L, c.rep, c.w, 1e-7), ParameterError);
  CHECK_THROWS_AS(kappa_flow_derivative(c.t, AlgebraElement::L, c.rep, c.w, 0.1), ParameterError);
}

TEST_CASE("non-homogeneous shifts violate the infinitesimal relations") {
  auto p = RepnParams::holomorphic(2.0);
  auto w = TruncationWindow::unilateral(64, 16);
  auto t = WeightedShiftSpec(w, -1, [](int n) { return Complex(1.0 / (n + 2.0)); }).to_matrix();
  auto k = kappa_flow_derivative(t, AlgebraElement::L, Representation::plain(p), w);
  CHECK(interior_norm(k.commutator - kappa_target(t, AlgebraElement::L), w) > 1e-2);
}

TEST_CASE("reducible lambda check") {
  auto w = TruncationWindow::bilateral(8, 2);
  CHECK(reducible_lambda_check(1.0, 0.5, w).value <= 1e-12);
  CHECK(reducible_lambda_check(1.0, 0.5, w).pass);
  auto r = reducible_lambda_check(1.5, 1.0, w);
  CHECK(std::abs(r.value - 0.5) <= 1e-12);
  CHECK(!r.pass);
  CHECK(reducible_lambda_check(0.4, 0.0, w).value == 0.0);

  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    double lambda = rng.uniform(0.05, 1.95);
    Complex coupling = rng.complex(3.0);
    CHECK(std::abs(reducible_lambda_check(lambda, coupling, w).value - std::abs(coupling) * std::abs(lambda - 1.0)) <= 1e-12);
  }
  CHECK_THROWS_AS(reducible_lambda_check(1.0, 1.0, TruncationWindow::bilateral(3, 1)), ParameterError);
}

TEST_CASE("report serialization") {
  auto r = DefectReport::make("x", 0.5, 1.0, {{"N", 64}});
  CHECK(r.pass);
  CHECK(r.to_json().dump() == R"({"name":"x","value":0.5,"tolerance":1.0,"pass":true,"context":{"N":64}})");
  CHECK(!DefectReport::make("nan", std::nan(""), 1.0).pass);
  CHECK(make_lower_bound_report("neg", 0.5, 0.01).pass);
}
