#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <complex>
#include <vector>

#include "nucert/clifford.hpp"
#include "nucert/exactnum.hpp"
#include "nucert/g2.hpp"
#include "nucert/liealg.hpp"
#include "nucert/linalg.hpp"
#include "nucert/superalg.hpp"

using nucert::clifford::RealSpinor;
using nucert::exactnum::Assignment;
using nucert::exactnum::ExactScalar;
using nucert::exactnum::GaussRat;
using nucert::exactnum::Rat;
using nucert::exactnum::Var;
using nucert::g2::GramScale;
using nucert::g2::ThreeForm;
using nucert::liealg::InvariantMetric;
using nucert::liealg::NilpotentLieAlgebra;
using nucert::linalg::PolyMatrix;
using nucert::superalg::SuperForm;

namespace {

ExactScalar var(Var v, int e = 1) { return ExactScalar::variable(v, e); }

ExactScalar frac(long num, long den) { return ExactScalar::rational(num, den); }

RealSpinor scaled_spinor(const RealSpinor& s, const ExactScalar& c) {
  RealSpinor out;
  for (int r = 0; r < 8; ++r) out.f[r] = c * s.f[r];
  return out;
}

bool same_spinor(const RealSpinor& x, const RealSpinor& y) {
  for (int r = 0; r < 8; ++r)
    if (!(x.f[r] == y.f[r])) return false;
  return true;
}

bool same_up_to_sign(const RealSpinor& x, const RealSpinor& y) {
  return same_spinor(x, y) || same_spinor(x, scaled_spinor(y, ExactScalar(-1)));
}

// exact rotation in the (p,q) coordinate plane by a rational point on the
// unit circle; preserves the real inner product
RealSpinor plane_rotate(const RealSpinor& s, int p, int q, long c_num,
                        long s_num, long den) {
  ExactScalar co = frac(c_num, den), si = frac(s_num, den);
  RealSpinor out = s;
  out.f[p] = co * s.f[p] - si * s.f[q];
  out.f[q] = si * s.f[p] + co * s.f[q];
  return out;
}

std::array<ExactScalar, 6> rational_tuple(const std::array<long, 6>& b) {
  std::array<ExactScalar, 6> out;
  for (int i = 0; i < 6; ++i) out[i] = ExactScalar(static_cast<int>(b[i]));
  return out;
}

bool family_admissible(const std::array<long, 6>& b) {
  auto pos = [](long x) { return x > 0; };
  auto neg = [](long x) { return x < 0; };
  return pos(b[0] * b[1] * b[2]) && pos(b[0] * b[4] * b[5]) &&
         pos(b[1] * b[4] * b[4]) && pos(b[2] * b[4] * b[5]) &&
         neg(b[0] * b[3] * b[4]) && neg(b[1] * b[3] * b[5]) &&
         neg(b[2] * b[3] * b[4]);
}

PolyMatrix substitute_matrix(const PolyMatrix& m, Var v,
                             const ExactScalar& value) {
  return m.map(
      [&](const ExactScalar& s) { return s.substitute(v, value); });
}

}  // namespace

TEST_CASE("three-form coefficient storage is alternating", "[g2]") {
  ThreeForm f;
  f.set(2, 1, 3, ExactScalar(5));
  CHECK(f.at(1, 2, 3) == ExactScalar(-5));
  CHECK(f.at(2, 1, 3) == ExactScalar(5));
  CHECK(f.at(3, 1, 2) == ExactScalar(-5));
  CHECK(f.at(1, 1, 3).is_zero());
  CHECK_THROWS_AS(f.set(1, 1, 2, ExactScalar(1)), std::invalid_argument);
  CHECK_THROWS_AS(f.set(1, 2, 8, ExactScalar(1)), std::out_of_range);

  f.set(1, 2, 3, ExactScalar::zero());
  CHECK(f.coefficients().empty());
}

TEST_CASE("spinor induces the standard three-form", "[g2]") {
  RealSpinor phi = nucert::clifford::compatible_spinor_raw();
  ThreeForm f = nucert::g2::three_form_from_spinor(phi);
  CHECK(f == ThreeForm::standard());

  CHECK(f.at(1, 2, 3) == ExactScalar(1));
  CHECK(f.at(1, 4, 5) == ExactScalar(1));
  CHECK(f.at(1, 6, 7) == ExactScalar(1));
  CHECK(f.at(2, 4, 6) == ExactScalar(1));
  CHECK(f.at(2, 5, 7) == ExactScalar(-1));
  CHECK(f.at(3, 5, 6) == ExactScalar(-1));
  CHECK(f.at(3, 4, 7) == ExactScalar(-1));
  int nonzero = 0;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j)
      for (int k = j + 1; k <= 7; ++k)
        if (!f.at(i, j, k).is_zero()) ++nonzero;
  CHECK(nonzero == 7);

  RealSpinor doubled = scaled_spinor(phi, ExactScalar(2));
  CHECK_THROWS_AS(nucert::g2::three_form_from_spinor(doubled),
                  std::domain_error);
}

TEST_CASE("three-form determines the spinor up to sign", "[g2]") {
  auto sol = nucert::g2::spinor_from_three_form(ThreeForm::standard());
  CHECK(sol.exactly_unit);
  CHECK(same_up_to_sign(sol.spinor, nucert::clifford::compatible_spinor_raw()));
  CHECK(nucert::g2::three_form_from_spinor(sol.spinor) ==
        ThreeForm::standard());

  ThreeForm lone;
  lone.set(1, 2, 3, ExactScalar(1));
  CHECK_THROWS_AS(nucert::g2::spinor_from_three_form(lone), std::domain_error);

  ThreeForm degenerate = ThreeForm::family(
      {ExactScalar(1), ExactScalar(1), ExactScalar(1), ExactScalar(1),
       ExactScalar::zero(), ExactScalar::zero()});
  CHECK_THROWS_AS(nucert::g2::spinor_from_three_form(degenerate),
                  std::domain_error);
}

TEST_CASE("standard form has multiplication operator spectrum 7, -1", "[g2]") {
  // sum of phi_ijk e_i e_j e_k acts with a simple eigenvalue 7 on the
  // inducing spinor and -1 on its orthogonal complement
  ThreeForm f = ThreeForm::standard();
  PolyMatrix op(8, 8);
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j)
      for (int k = j + 1; k <= 7; ++k) {
        ExactScalar c = f.at(i, j, k);
        if (c.is_zero()) continue;
        PolyMatrix m = nucert::clifford::clifford_action_f(i) *
                       nucert::clifford::clifford_action_f(j) *
                       nucert::clifford::clifford_action_f(k);
        op = op + m.scaled(c);
      }
  auto cp = op.charpoly();
  const long expected[9] = {-7, -48, -140, -224, -210, -112, -28, 0, 1};
  REQUIRE(cp.size() == 9);
  for (int k = 0; k < 9; ++k)
    CHECK(cp[k] == ExactScalar(static_cast<int>(expected[k])));

  RealSpinor phi = nucert::clifford::compatible_spinor_raw();
  std::array<ExactScalar, 8> image{};
  for (int r = 0; r < 8; ++r) {
    ExactScalar acc;
    for (int c = 0; c < 8; ++c) acc = acc + op.at(r, c) * phi.f[c];
    image[r] = acc;
  }
  for (int r = 0; r < 8; ++r) CHECK(image[r] == ExactScalar(7) * phi.f[r]);
}

TEST_CASE("standard form induces the identity metric", "[g2]") {
  auto m = nucert::g2::metric_from_three_form(ThreeForm::standard());
  CHECK(m.orientation == 1);
  CHECK(m.det_b == ExactScalar(1));
  REQUIRE(m.volume_scale.has_value());
  CHECK(*m.volume_scale == ExactScalar(1));
  REQUIRE(m.metric.has_value());
  PolyMatrix id = PolyMatrix::identity(7);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) {
      CHECK(m.b_matrix.at(r, c) == id.at(r, c));
      CHECK(m.metric->at(r, c) == id.at(r, c));
    }
}

TEST_CASE("scaled family form recovers the stretched metric", "[g2]") {
  ExactScalar a = var(Var::a);
  ExactScalar a2 = var(Var::a, 2);
  ThreeForm fa = ThreeForm::family(
      {ExactScalar(1), ExactScalar(1), a2, a, -a, -a});
  auto m = nucert::g2::metric_from_three_form(fa);
  CHECK(m.orientation == 1);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) {
      if (r != c) {
        CHECK(m.b_matrix.at(r, c).is_zero());
        continue;
      }
      CHECK(m.b_matrix.at(r, c) == (r < 5 ? a2 : var(Var::a, 4)));
    }
  CHECK(m.det_b == var(Var::a, 18));
  REQUIRE(m.volume_scale.has_value());
  CHECK(*m.volume_scale == a2);
  REQUIRE(m.metric.has_value());
  for (int r = 0; r < 7; ++r)
    CHECK(m.metric->at(r, r) == (r < 5 ? ExactScalar(1) : a2));
}

TEST_CASE("family diagonal matches the coefficient products", "[g2]") {
  const std::array<std::array<long, 6>, 5> tuples = {{
      {1, 1, 1, 1, -1, -1},
      {2, 1, 3, 1, -1, -2},
      {1, 1, 9, 3, -3, -3},
      {1, 2, 1, 2, -1, -1},
      {3, 1, 2, 1, -2, -3},
  }};
  for (const auto& b : tuples) {
    CAPTURE(b[0], b[1], b[2], b[3], b[4], b[5]);
    REQUIRE(family_admissible(b));
    auto m = nucert::g2::metric_from_three_form(
        ThreeForm::family(rational_tuple(b)));
    CHECK(m.orientation == 1);
    const long diag[7] = {b[0] * b[1] * b[2], -b[0] * b[3] * b[4],
                          b[0] * b[4] * b[5], -b[1] * b[3] * b[5],
                          b[1] * b[4] * b[4], -b[2] * b[3] * b[4],
                          b[2] * b[4] * b[5]};
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) {
        ExactScalar want =
            r == c ? ExactScalar(static_cast<int>(diag[r])) : ExactScalar();
        CHECK(m.b_matrix.at(r, c) == want);
      }
  }

  // a sign flip on the fourth coefficient breaks the admissibility
  // conditions and the induced bilinear form stops being definite
  CHECK_FALSE(family_admissible({2, 1, 3, -1, -1, -2}));
  CHECK_THROWS_AS(
      nucert::g2::metric_from_three_form(ThreeForm::family(
          rational_tuple({2, 1, 3, -1, -1, -2}))),
      std::domain_error);

  // negating the whole form keeps the metric and reverses the orientation
  auto flipped = nucert::g2::metric_from_three_form(ThreeForm::family(
      rational_tuple({-1, -1, -1, -1, 1, 1})));
  CHECK(flipped.orientation == -1);
  REQUIRE(flipped.volume_scale.has_value());
  CHECK(*flipped.volume_scale == ExactScalar(-1));
  REQUIRE(flipped.metric.has_value());
  for (int r = 0; r < 7; ++r)
    CHECK(flipped.metric->at(r, r) == ExactScalar(1));
}

TEST_CASE("rotated unit spinors still induce the flat metric", "[g2]") {
  RealSpinor phi = nucert::clifford::compatible_spinor_raw();
  const std::array<std::array<long, 5>, 6> rotations = {{
      {0, 1, 3, 4, 5},
      {2, 5, 5, 12, 13},
      {3, 6, 8, 15, 17},
      {1, 7, 20, 21, 29},
      {0, 4, 3, 4, 5},
      {2, 6, 5, 12, 13},
  }};
  RealSpinor cur = phi;
  for (const auto& r : rotations) {
    cur = plane_rotate(cur, static_cast<int>(r[0]), static_cast<int>(r[1]),
                       r[2], r[3], r[4]);
    CHECK(nucert::clifford::real_inner(cur, cur) == ExactScalar(2));
    ThreeForm f = nucert::g2::three_form_from_spinor(cur);
    auto m = nucert::g2::metric_from_three_form(f);
    CHECK(m.orientation == 1);
    PolyMatrix id = PolyMatrix::identity(7);
    for (int rr = 0; rr < 7; ++rr)
      for (int cc = 0; cc < 7; ++cc)
        CHECK(m.b_matrix.at(rr, cc) == id.at(rr, cc));
    auto sol = nucert::g2::spinor_from_three_form(f);
    CHECK(sol.exactly_unit);
    CHECK(same_up_to_sign(sol.spinor, cur));
  }
}

TEST_CASE("closedness of the standard form on both algebras", "[g2]") {
  CHECK(nucert::g2::is_closed(NilpotentLieAlgebra::h1(),
                              ThreeForm::standard()));
  CHECK(nucert::g2::is_closed(NilpotentLieAlgebra::abelian(),
                              ThreeForm::standard()));

  NilpotentLieAlgebra h2 = NilpotentLieAlgebra::h2();
  CHECK_FALSE(nucert::g2::is_closed(h2, ThreeForm::standard()));

  // the full differential is (a - b - c) e^1237, so closedness is exactly
  // the linear relation between the three structure constants
  SuperForm d = nucert::liealg::ce_differential(
      h2, ThreeForm::standard().as_superform());
  SuperForm expected = SuperForm::term(
      0b1000111, 0, var(Var::a) - var(Var::b) - var(Var::c));
  CHECK(d.terms() == expected.terms());

  ExactScalar b = var(Var::b), c = var(Var::c);
  NilpotentLieAlgebra closed("h2-closed");
  closed.set_bracket(1, 2, 4, -(b + c));
  closed.set_bracket(1, 3, 5, -b);
  closed.set_bracket(2, 3, 6, -c);
  CHECK(nucert::g2::is_closed(closed, ThreeForm::standard()));

  NilpotentLieAlgebra off("h2-off");
  off.set_bracket(1, 2, 4, -(b + c + ExactScalar(1)));
  off.set_bracket(1, 3, 5, -b);
  off.set_bracket(2, 3, 6, -c);
  CHECK_FALSE(nucert::g2::is_closed(off, ThreeForm::standard()));
}

TEST_CASE("intrinsic endomorphism of the first algebra", "[g2]") {
  NilpotentLieAlgebra alg = NilpotentLieAlgebra::h1();
  InvariantMetric g = InvariantMetric::orthonormal_frame();
  RealSpinor phi = nucert::clifford::compatible_spinor_raw();
  PolyMatrix s = nucert::g2::intrinsic_endomorphism(alg, g, phi);

  ExactScalar q = frac(1, 4) * var(Var::a);
  PolyMatrix expected(7, 7);
  expected.at(6, 1) = -q;
  expected.at(5, 2) = q;
  expected.at(2, 5) = -q;
  expected.at(1, 6) = q;
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) CHECK(s.at(r, c) == expected.at(r, c));

  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) CHECK(s.at(r, c) == -s.at(c, r));

  CHECK(nucert::g2::endomorphism_action(s, ThreeForm::standard()) ==
        ThreeForm());

  RealSpinor doubled = scaled_spinor(phi, ExactScalar(2));
  CHECK_THROWS_AS(nucert::g2::intrinsic_endomorphism(alg, g, doubled),
                  std::domain_error);
}

TEST_CASE("intrinsic endomorphism of the second algebra", "[g2]") {
  NilpotentLieAlgebra alg = NilpotentLieAlgebra::h2();
  InvariantMetric g = InvariantMetric::orthonormal_frame();
  RealSpinor phi = nucert::clifford::compatible_spinor_raw();
  PolyMatrix s = nucert::g2::intrinsic_endomorphism(alg, g, phi);

  ExactScalar a4 = frac(1, 4) * var(Var::a);
  ExactScalar b4 = frac(1, 4) * var(Var::b);
  ExactScalar c4 = frac(1, 4) * var(Var::c);
  PolyMatrix expected(7, 7);
  expected.at(5, 0) = a4 - b4;
  expected.at(4, 1) = c4 - a4;
  expected.at(3, 2) = b4 + c4;
  expected.at(2, 3) = -a4;
  expected.at(1, 4) = b4;
  expected.at(0, 5) = -c4;
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) CHECK(s.at(r, c) == expected.at(r, c));

  // skew-symmetry and the annihilation of the inducing form hold exactly
  // on the closed locus a = b + c, and fail off it
  ExactScalar bc = var(Var::b) + var(Var::c);
  PolyMatrix closed = substitute_matrix(s, Var::a, bc);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) CHECK(closed.at(r, c) == -closed.at(c, r));
  CHECK_FALSE(s.at(5, 0) == -s.at(0, 5));

  CHECK(nucert::g2::endomorphism_action(closed, ThreeForm::standard()) ==
        ThreeForm());
  ThreeForm off =
      nucert::g2::endomorphism_action(s, ThreeForm::standard());
  CHECK_FALSE(off == ThreeForm());
}

TEST_CASE("metric family normalization in the stretched frame", "[g2]") {
  ExactScalar a2 = var(Var::a, 2);

  PolyMatrix ga = PolyMatrix::identity(7);
  ga.at(5, 5) = a2;
  ga.at(6, 6) = a2;
  auto direct = nucert::g2::normalize_metric_h1(ga, GramScale::metric);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c)
      CHECK(direct.automorphism.at(r, c) ==
            PolyMatrix::identity(7).at(r, c));
  CHECK(direct.collapse_difference.is_zero());
  REQUIRE(direct.a_squared.has_value());
  CHECK(*direct.a_squared == a2);
  CHECK(direct.a_squared_numeric == Catch::Approx(4.0));

  ThreeForm fa = ThreeForm::family({ExactScalar(1), ExactScalar(1), a2,
                                    var(Var::a), -var(Var::a), -var(Var::a)});
  auto induced = nucert::g2::metric_from_three_form(fa);
  auto through_metric = nucert::g2::normalize_metric_h1(induced);
  REQUIRE(through_metric.a_squared.has_value());
  CHECK(*through_metric.a_squared == a2);

  auto weighted = nucert::g2::normalize_metric_h1(
      induced.b_matrix, GramScale::volume_weighted);
  CHECK(weighted.scale_witness == var(Var::a, 18));
  REQUIRE(weighted.a_squared.has_value());
  CHECK(*weighted.a_squared == a2);
  CHECK(weighted.a_squared_numeric == Catch::Approx(4.0));
}

TEST_CASE("normalization recovers the scale from numeric families", "[g2]") {
  auto m = nucert::g2::metric_from_three_form(
      ThreeForm::family(rational_tuple({1, 1, 9, 3, -3, -3})));
  for (int r = 0; r < 7; ++r)
    CHECK(m.b_matrix.at(r, r) == ExactScalar(r < 5 ? 9 : 81));
  auto norm = nucert::g2::normalize_metric_h1(m.b_matrix,
                                              GramScale::volume_weighted);
  REQUIRE(norm.a_squared.has_value());
  CHECK(*norm.a_squared == ExactScalar(9));
  CHECK(norm.a_squared_numeric == Catch::Approx(9.0));

  // a tuple whose scale is not a perfect ninth power still reports the
  // numeric value of the invariant ratio
  auto rough = nucert::g2::metric_from_three_form(
      ThreeForm::family(rational_tuple({2, 1, 3, 1, -1, -2})));
  auto rnorm = nucert::g2::normalize_metric_h1(rough.b_matrix,
                                               GramScale::volume_weighted);
  double det = 6.0 * 2 * 4 * 2 * 1 * 3 * 6;
  double ratio = 3.0 / (6.0 * 2.0);
  double expected = std::pow(det * std::pow(ratio, 9.0), 1.0 / 9.0);
  CHECK(rnorm.a_squared_numeric == Catch::Approx(expected));
}

TEST_CASE("normalization straightens a tilted central direction", "[g2]") {
  PolyMatrix g = PolyMatrix::identity(7);
  g.at(3, 3) = ExactScalar(2);
  g.at(3, 5) = ExactScalar(1);
  g.at(5, 3) = ExactScalar(1);
  auto norm = nucert::g2::normalize_metric_h1(g, GramScale::metric);
  CHECK(norm.automorphism.at(5, 3) == ExactScalar(-1));
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c)
      CHECK(norm.transformed.at(r, c) == PolyMatrix::identity(7).at(r, c));
  REQUIRE(norm.a_squared.has_value());
  CHECK(*norm.a_squared == ExactScalar(1));
}

TEST_CASE("normalization rejects matrices outside the family", "[g2]") {
  PolyMatrix small = PolyMatrix::identity(6);
  CHECK_THROWS_AS(nucert::g2::normalize_metric_h1(small, GramScale::metric),
                  std::invalid_argument);

  PolyMatrix lopsided = PolyMatrix::identity(7);
  lopsided.at(0, 1) = ExactScalar(1);
  CHECK_THROWS_AS(
      nucert::g2::normalize_metric_h1(lopsided, GramScale::metric),
      std::invalid_argument);

  PolyMatrix indefinite = PolyMatrix::identity(7);
  indefinite.at(2, 2) = ExactScalar(-1);
  CHECK_THROWS_AS(
      nucert::g2::normalize_metric_h1(indefinite, GramScale::metric),
      std::domain_error);

  PolyMatrix unequal = PolyMatrix::identity(7);
  unequal.at(5, 5) = ExactScalar(2);
  unequal.at(6, 6) = ExactScalar(3);
  CHECK_THROWS_AS(
      nucert::g2::normalize_metric_h1(unequal, GramScale::metric),
      std::domain_error);

  PolyMatrix stretched = PolyMatrix::identity(7);
  stretched.at(3, 3) = ExactScalar(2);
  CHECK_THROWS_AS(
      nucert::g2::normalize_metric_h1(stretched, GramScale::metric),
      std::domain_error);

  PolyMatrix tilted = PolyMatrix::identity(7).scaled(ExactScalar(2));
  tilted.at(0, 1) = ExactScalar(1);
  tilted.at(1, 0) = ExactScalar(1);
  CHECK_THROWS_AS(
      nucert::g2::normalize_metric_h1(tilted, GramScale::metric),
      std::domain_error);
}
