#include <cmath>

#include "doctest.h"
#include "homshift/errors.hpp"
#include "homshift/repn.hpp"
#include "support.hpp"

using namespace homshift;
using testing::interior_max_diff;
using testing::Rng;

namespace {

const Complex I(0.0, 1.0);

std::vector<RepnParams> sample_params() {
  return {RepnParams::holomorphic(0.5),        RepnParams::holomorphic(2.0),
          RepnParams::holomorphic(2.7),        RepnParams::principal(0.3, 0.5),
          RepnParams::principal(-0.5, 2.0),    RepnParams::principal(1.0, 0.5),
          RepnParams::complementary(0.4, 0.2), RepnParams::complementary(-0.5, 0.8)};
}

TruncationWindow window_for(const RepnParams& p, int n = 64, int pad = 16) {
  return TruncationWindow::make(p.index_set, n, pad);
}

}  // namespace

TEST_CASE("classify_series") {
  CHECK(classify_series({IndexSet::unilateral, 2.0, 0.0}) == SeriesTag::HoloDiscrete);
  CHECK(classify_series({IndexSet::bilateral, 0.3, Complex(0.35, 0.7)}) == SeriesTag::Principal);
  CHECK(classify_series({IndexSet::bilateral, 0.4, 0.2}) == SeriesTag::Complementary);
  CHECK(classify_series(RepnParams::principal(1.0, 0.0)) == SeriesTag::Principal);

  CHECK_THROWS_AS(classify_series({IndexSet::unilateral, -1.0, 0.0}), ParameterError);
  CHECK_THROWS_AS(classify_series({IndexSet::unilateral, 1.0, 0.3}), ParameterError);
  CHECK_THROWS_AS(classify_series({IndexSet::bilateral, 1.5, -0.25}), ParameterError);
  CHECK_THROWS_AS(classify_series({IndexSet::bilateral, 0.4, 0.7}), ParameterError);
  CHECK_THROWS_AS(classify_series({IndexSet::bilateral, 0.4, Complex(0.2, 0.1)}), ParameterError);
  try {
    classify_series({IndexSet::bilateral, 0.4, 0.7});
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("1-lambda") != std::string::npos);
  }
}

TEST_CASE("generator examples") {
  auto p = RepnParams::holomorphic(2.0);
  auto w = TruncationWindow::unilateral(8, 2);
  auto e = generator_matrix(p, AlgebraElement::e, w);
  for (int row = 0; row <= 8; ++row) CHECK(e.at(row, 0) == Complex{});
  CHECK(generator_matrix(p, AlgebraElement::f, w).at(4, 3) == Complex(5.0));
  CHECK(generator_matrix(RepnParams::holomorphic(1.0), AlgebraElement::h, w).at(0, 0) == Complex(0, -1));
  CHECK(e.at(2, 3) == Complex(-3.0));

  auto l = generator_matrix(p, AlgebraElement::L, w);
  auto m = generator_matrix(p, AlgebraElement::M, w);
  auto f = generator_matrix(p, AlgebraElement::f, w);
  CHECK(testing::max_abs_diff(l, e + f) == 0.0);
  CHECK(testing::max_abs_diff(m, I * (e - f)) == 0.0);
  CHECK_THROWS_AS(generator_matrix(p, AlgebraElement::h, TruncationWindow::bilateral(8, 2)), ParameterError);
}

TEST_CASE("bracket relations") {
  for (const auto& p : sample_params()) {
    auto w = window_for(p, 20, 3);
    auto h = generator_matrix(p, AlgebraElement::h, w);
    auto e = generator_matrix(p, AlgebraElement::e, w);
    auto f = generator_matrix(p, AlgebraElement::f, w);
    CHECK(interior_max_diff(commutator(h, e), Complex(0, 2) * e, w) <= 1e-10);
    CHECK(interior_max_diff(commutator(h, f), Complex(0, -2) * f, w) <= 1e-10);
    CHECK(interior_max_diff(commutator(e, f), Complex(0, -1) * h, w) <= 1e-10);

    // Expansion on f_{n-1}, f_n, f_{n+1}: [e,f] f_n = ((l+m+n)(m-n-1) - (m-n)(l+m+n-1)) f_n.
    Complex mu = p.mu;
    double lambda = p.lambda;
    auto ef = commutator(e, f);
    for (int n = w.first(); n <= w.last(); ++n) {
      if (!w.is_interior(n)) continue;
      Complex expected = (lambda + mu + double(n)) * (mu - double(n) - 1.0) - (mu - double(n)) * (lambda + mu + double(n) - 1.0);
      CHECK(std::abs(ef.at(n, n) - expected) <= 1e-10);
      CHECK(std::abs(expected + (2.0 * n + lambda)) <= 1e-12);
    }
  }
}

TEST_CASE("rep_matrix examples") {
  auto p = RepnParams::principal(0.3, 0.5);
  auto w = window_for(p);
  CHECK(testing::max_abs_diff(rep_matrix(p, GroupPath{}, w), OperatorMatrix::identity(w)) == 0.0);

  const double t = 0.37;
  auto r = rep_matrix(p, GroupPath({{Generator::h, t}}), w);
  for (int n = w.first(); n <= w.last(); ++n) {
    CHECK(std::abs(r.at(n, n) - std::exp(Complex(0, -(2.0 * n + p.lambda) * t))) <= 1e-15);
  }

  auto path = GroupPath::parse("L:0.1");
  CHECK(interior_max_diff(rep_matrix(p, path, w), oracle_rep_matrix(p, path, w), w) <= 1e-8);
}

TEST_CASE("homomorphism and cross-route agreement") {
  auto p1 = GroupPath::parse("L:0.06");
  auto p2 = GroupPath::parse("M:-0.04,h:0.2");
  for (const auto& p : sample_params()) {
    auto w = window_for(p);
    auto whole = rep_matrix(p, p1.then(p2), w);
    CHECK(testing::max_abs_diff(whole, rep_matrix(p, p1, w) * rep_matrix(p, p2, w)) <= 1e-14);
    CHECK(interior_norm(whole - oracle_rep_matrix(p, p1.then(p2), w), w) <= 1e-7);
    CHECK(interior_norm(rep_matrix(p, p1, w) - oracle_rep_matrix(p, p1, w), w) <= 1e-7);
  }
}

TEST_CASE("gram examples") {
  auto wb = TruncationWindow::bilateral(10, 2);
  CHECK(testing::max_abs_diff(gram(RepnParams::principal(0.3, 0.4), wb), OperatorMatrix::identity(wb)) == 0.0);
  auto wu = TruncationWindow::unilateral(10, 2);
  CHECK(testing::max_abs_diff(gram(RepnParams::holomorphic(1.0), wu), OperatorMatrix::identity(wu)) <= 1e-15);
  CHECK(gram(RepnParams::holomorphic(2.0), wu).at(3, 3).real() == doctest::Approx(0.25).epsilon(1e-13));
}

TEST_CASE("unitarity") {
  auto h = GroupPath::parse("h:0.3");
  auto l = GroupPath::parse("L:0.1");
  for (const auto& p : sample_params()) {
    auto w = window_for(p);
    CHECK(unitarity_defect(p, h, w) <= 1e-14);
    CHECK(unitarity_defect(p, l, w) <= 1e-8);
  }
  auto p = RepnParams::holomorphic(2.0);
  auto w = window_for(p);
  CHECK(unitarity_defect(p, l, w) < 1e-8);

  // The truncated generators are exactly skew-adjoint for the Gram form, so
  // the defect sits at rounding level for every padding and only shrinks
  // with the interior block.
  double previous = unitarity_defect(p, l, w.with_padding(2));
  for (int pad = 4; pad <= 28; pad += 4) {
    double d = unitarity_defect(p, l, w.with_padding(pad));
    CHECK(d <= 2.0 * previous);
    CHECK(d <= 1e-13);
    previous = d;
  }
}

TEST_CASE("circle oracle examples") {
  auto p = RepnParams::principal(0.3, 0.5);
  auto w = TruncationWindow::bilateral(16, 4);
  Rng rng(41);
  CoefficientVector f(w);
  for (auto& c : f.coeffs) c = rng.complex();
  Complex ep = (p.lambda + p.mu) / 2.0, em = p.mu / 2.0;
  std::size_t grid = default_oracle_grid(w);
  CHECK(grid == 512);

  auto same = circle_rep_oracle(p, MobiusElement::identity(), ep, em, f, grid);
  for (int n = w.first(); n <= w.last(); ++n) CHECK(std::abs(same[n] - f[n]) <= 1e-13);

  const double t = 0.2;
  auto rotated = circle_rep_oracle(p, flow(Generator::h, -t), ep, em, f, grid);
  for (int n = w.first(); n <= w.last(); ++n) {
    CHECK(std::abs(rotated[n] - std::exp(Complex(0, -(2.0 * n + p.lambda) * t)) * f[n]) <= 1e-13);
  }

  auto hp = RepnParams::holomorphic(2.0);
  auto wu = TruncationWindow::unilateral(64, 16);
  auto col = circle_rep_oracle(hp, flow(Generator::L, -0.1), 1.0, 0.0, CoefficientVector::basis(wu, 0),
                               default_oracle_grid(wu));
  auto r = rep_matrix(hp, GroupPath::parse("L:0.1"), wu);
  for (int n = wu.first(); n <= wu.last(); ++n) {
    if (wu.is_interior(n)) CHECK(std::abs(col[n] - r.at(n, 0)) <= 1e-8);
  }

  CHECK_THROWS_AS(circle_rep_oracle(p, MobiusElement(1.0, 0.5), ep, em, f, grid), ParameterError);
  CoefficientVector wide = CoefficientVector::basis(TruncationWindow::bilateral(16, 4), 16);
  CHECK_THROWS_AS(circle_rep_oracle(p, flow(Generator::L, -0.3), ep, em, wide, 64), ParameterError);
}

TEST_CASE("reducible generators") {
  auto w = TruncationWindow::bilateral(12, 3);
  auto f = reducible_generator_matrix(1.3, AlgebraElement::f, w);
  for (int row = w.first(); row <= w.last(); ++row) CHECK(f.at(row, -1) == Complex{});
  auto e = reducible_generator_matrix(1.3, AlgebraElement::e, w);
  CHECK(std::abs(e.at(-3, -2) - 1.7) <= 1e-15);
  for (int row = w.first(); row <= w.last(); ++row) CHECK(e.at(row, 0) == Complex{});

  auto r10 = RepnParams::principal(1.0, 0.0);
  for (auto x : {AlgebraElement::h, AlgebraElement::e, AlgebraElement::f, AlgebraElement::L, AlgebraElement::M}) {
    CHECK(testing::max_abs_diff(reducible_generator_matrix(1.0, x, w), generator_matrix(r10, x, w)) == 0.0);
  }

  for (double lambda : {0.3, 1.0, 1.7}) {
    auto hh = reducible_generator_matrix(lambda, AlgebraElement::h, w);
    auto ee = reducible_generator_matrix(lambda, AlgebraElement::e, w);
    auto ff = reducible_generator_matrix(lambda, AlgebraElement::f, w);
    CHECK(interior_max_diff(commutator(hh, ee), Complex(0, 2) * ee, w) <= 1e-10);
    CHECK(interior_max_diff(commutator(hh, ff), Complex(0, -2) * ff, w) <= 1e-10);
    CHECK(interior_max_diff(commutator(ee, ff), Complex(0, -1) * hh, w) <= 1e-10);

    auto g = reducible_gram(lambda, TruncationWindow::bilateral(40, 10));
    auto path = GroupPath::parse("L:0.1,M:0.05");
    auto r = reducible_rep_matrix(lambda, path, g.window());
    CHECK(interior_norm(r.adjoint() * g * r - g) <= 1e-12);
  }
  CHECK_THROWS_AS(reducible_generator_matrix(2.0, AlgebraElement::h, w), ParameterError);
  CHECK_THROWS_AS(reducible_generator_matrix(1.0, AlgebraElement::h, TruncationWindow::unilateral(12, 3)),
                  ParameterError);
}

TEST_CASE("sharp representation") {
  auto p = RepnParams::holomorphic(1.5);
  auto w = window_for(p, 24, 6);
  CHECK(testing::max_abs_diff(rep_matrix_sharp(p, GroupPath::parse("L:0.2"), w), rep_matrix(p, GroupPath::parse("L:0.2"), w)) == 0.0);
  CHECK(testing::max_abs_diff(rep_matrix_sharp(p, GroupPath::parse("h:0.2"), w), rep_matrix(p, GroupPath::parse("h:-0.2"), w)) == 0.0);
  CHECK(testing::max_abs_diff(rep_matrix_sharp(p, GroupPath{}, w), OperatorMatrix::identity(w)) == 0.0);

  // The sharp generators are the derivatives of the sharp flows.
  auto sharp = Representation::sharp(p);
  const double s = 1e-6;
  for (auto g : {Generator::h, Generator::L, Generator::M}) {
    auto plus = sharp.rep(GroupPath({{g, s}}), w);
    auto minus = sharp.rep(GroupPath({{g, -s}}), w);
    auto fd = (plus - minus);
    fd *= Complex(1.0 / (2.0 * s));
    CHECK(interior_max_diff(fd, sharp.generator(to_algebra(g), w), w) <= 1e-6);
  }
  CHECK(sharp.series() == SeriesTag::AntiHoloDiscrete);
  CHECK(Representation::reducible(1.2).series() == SeriesTag::ReducibleSum);
}
