#include <catch2/catch_amalgamated.hpp>

#include "nucert/exactnum.hpp"

using namespace nucert::exactnum;

namespace {

// deterministic small-scalar generator for property checks
struct Lcg {
  std::uint64_t state = 0x9e3779b97f4a7c15ull;
  std::uint64_t next() {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    return state >> 33;
  }
  int small(int lo, int hi) { return lo + static_cast<int>(next() % (hi - lo + 1)); }
  ExactScalar scalar() {
    ExactScalar s;
    int terms = small(1, 4);
    for (int t = 0; t < terms; ++t) {
      ExactScalar m = ExactScalar::rational(small(-5, 5), small(1, 3));
      if (small(0, 1)) m *= ExactScalar::i();
      int nv = small(0, 2);
      for (int k = 0; k < nv; ++k)
        m *= ExactScalar::variable(static_cast<Var>(small(0, kNumVars - 1)),
                                   small(-2, 2));
      s += m;
    }
    return s;
  }
};

}  // namespace

TEST_CASE("gaussian rational field operations", "[exactnum]") {
  GaussRat i = GaussRat::i();
  REQUIRE(i * i == GaussRat(-1));
  GaussRat z(Rat(3, 4), Rat(-2, 5));
  REQUIRE(z * z.conj() == GaussRat(Rat(3, 4) * Rat(3, 4) + Rat(2, 5) * Rat(2, 5)));
  GaussRat w(Rat(1, 2), Rat(7));
  REQUIRE((z / w) * w == z);
  REQUIRE_THROWS_AS(z / GaussRat(0), std::domain_error);
}

TEST_CASE("scalar ring laws on generated values", "[exactnum]") {
  Lcg rng;
  for (int trial = 0; trial < 25; ++trial) {
    ExactScalar x = rng.scalar(), y = rng.scalar(), z = rng.scalar();
    REQUIRE(x + y == y + x);
    REQUIRE((x + y) + z == x + (y + z));
    REQUIRE(x * y == y * x);
    REQUIRE((x * y) * z == x * (y * z));
    REQUIRE(x * (y + z) == x * y + x * z);
    REQUIRE(x - x == ExactScalar::zero());
    REQUIRE(x * ExactScalar::one() == x);
    REQUIRE(x * ExactScalar::zero() == ExactScalar::zero());
  }
}

TEST_CASE("laurent monomial division", "[exactnum]") {
  ExactScalar a = ExactScalar::variable(Var::a);
  ExactScalar c = ExactScalar::variable(Var::c_aux);
  ExactScalar num = ExactScalar(3) * a * a * c + ExactScalar(5) * c * c;
  ExactScalar q = num.div_exact(c);
  REQUIRE(q * c == num);
  REQUIRE(q == ExactScalar(3) * a * a + ExactScalar(5) * c);
  // dividing by c^2 produces a genuine Laurent term a^2 c^{-1}
  ExactScalar q2 = num.div_exact(c * c);
  REQUIRE(q2 * c * c == num);
  REQUIRE(q2.min_degree_in(Var::c_aux) == -1);
  REQUIRE_THROWS_AS(num.div_exact(num), std::domain_error);
  REQUIRE_THROWS_AS(num.div_exact(ExactScalar::zero()), std::domain_error);
  REQUIRE(ExactScalar::zero().div_exact(c).is_zero());
}

TEST_CASE("monomial inverse round trip", "[exactnum]") {
  ExactScalar m = ExactScalar::rational(-7, 3) * ExactScalar::pi_pow(2) *
                  ExactScalar::variable(Var::alpha6, -1);
  REQUIRE(m * m.monomial_inverse() == ExactScalar::one());
}

TEST_CASE("grade arithmetic in the circle constant", "[exactnum]") {
  ExactScalar x = ExactScalar::pi_pow(2) * ExactScalar::variable(Var::a);
  ExactScalar y = ExactScalar::pi_pow(2) * ExactScalar::variable(Var::b);
  REQUIRE(add_graded(x, y) == x + y);
  REQUIRE(add_graded(x, ExactScalar::zero()) == x);
  REQUIRE(x.pi_power().value() == 2);
  ExactScalar mixed = x + ExactScalar::variable(Var::b);
  REQUIRE(!mixed.pi_power().has_value());
  REQUIRE(ExactScalar::zero().pi_power().value() == 0);
  REQUIRE_THROWS_MATCHES(
      add_graded(x, ExactScalar::one()), std::domain_error,
      Catch::Matchers::Message("inhomogeneous pi-grade"));
}

TEST_CASE("beta frequencies and norms", "[exactnum]") {
  ExactScalar b6 = beta(6);
  REQUIRE(b6.conj() == -b6);
  ExactScalar expect = ExactScalar(4) * ExactScalar::pi_pow(2) *
                       ExactScalar::variable(Var::alpha6, 2);
  REQUIRE(norm_sq(b6) == expect);
  REQUIRE(b6.pi_power().value() == 1);
}

TEST_CASE("substitution", "[exactnum]") {
  ExactScalar t = ExactScalar::variable(Var::t);
  ExactScalar a = ExactScalar::variable(Var::a);
  ExactScalar s = t * t + ExactScalar(2) * t + ExactScalar::one();
  ExactScalar sub = s.substitute(Var::t, a + ExactScalar::one());
  ExactScalar expect = (a + ExactScalar(2)) * (a + ExactScalar(2));
  REQUIRE(sub == expect);

  ExactScalar laurent = ExactScalar::variable(Var::t, -2);
  REQUIRE(laurent.substitute(Var::t, ExactScalar(2) * a) ==
          ExactScalar::rational(1, 4) * ExactScalar::variable(Var::a, -2));
  REQUIRE_THROWS_AS(laurent.substitute(Var::t, a + ExactScalar::one()),
                    std::domain_error);
}

TEST_CASE("power reduction realises quotient relations", "[exactnum]") {
  ExactScalar c = ExactScalar::variable(Var::c_aux);
  ExactScalar a = ExactScalar::variable(Var::a);
  ExactScalar rhs = ExactScalar(4) * ExactScalar::pi_pow(2) * a * a;
  // c^6 + c^2 modulo c^4 = rhs becomes rhs c^2 + c^2
  ExactScalar s = ExactScalar::variable(Var::c_aux, 6) + c * c;
  ExactScalar red = reduce_power(s, Var::c_aux, 4, rhs);
  REQUIRE(red == rhs * c * c + c * c);
  REQUIRE(red.degree_in(Var::c_aux) < 4);
  REQUIRE_THROWS_AS(reduce_power(s, Var::c_aux, 4, c * a),
                    std::invalid_argument);
}

TEST_CASE("degree and coefficient extraction", "[exactnum]") {
  ExactScalar p = ExactScalar::pi_pow(3) * ExactScalar::variable(Var::alpha1) +
                  ExactScalar::pi_pow(1) * ExactScalar::variable(Var::alpha2);
  REQUIRE(p.degree_in(Var::pi) == 3);
  REQUIRE(p.min_degree_in(Var::pi) == 1);
  REQUIRE(p.coeff_of(Var::pi, 3) == ExactScalar::variable(Var::alpha1));
  REQUIRE(p.coeff_of(Var::pi, 2).is_zero());
}

TEST_CASE("positivity certificate", "[exactnum]") {
  // shaped like the kernel-nonvanishing witnesses: 4 (x^2 + y^2)^2 + a^2 x^2
  ExactScalar x = ExactScalar::variable(Var::alpha4);
  ExactScalar y = ExactScalar::variable(Var::alpha5);
  ExactScalar a = ExactScalar::variable(Var::a);
  ExactScalar q = x * x + y * y;
  ExactScalar s = ExactScalar(4) * q * q + a * a * x * x;
  auto cert = positivity_certificate(s);
  REQUIRE(cert.all_coefficients_positive);
  REQUIRE(cert.all_exponents_even);
  REQUIRE(cert.positive_whenever_nonzero(Var::alpha4));
  REQUIRE(cert.positive_whenever_nonzero(Var::alpha5));
  REQUIRE(!cert.positive_whenever_nonzero(Var::a));

  auto bad = positivity_certificate(s - ExactScalar(16) * x * x * y * y);
  REQUIRE(!bad.all_coefficients_positive);
  auto odd = positivity_certificate(x * x * x);
  REQUIRE(!odd.all_exponents_even);
}

TEST_CASE("numeric evaluation", "[exactnum]") {
  Assignment at;
  at.set(Var::alpha3, 0.5).set(Var::a, 2.0);
  ExactScalar s = beta(3) * ExactScalar::variable(Var::a);
  auto v = s.eval(at);
  REQUIRE(v.real() == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(v.imag() == Catch::Approx(2.0 * std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("string rendering", "[exactnum]") {
  ExactScalar s = ExactScalar::rational(-1, 2) * ExactScalar::pi_pow(2) +
                  ExactScalar::i() * ExactScalar::variable(Var::alpha7);
  std::string str = s.to_string();
  REQUIRE(str.find("pi^2") != std::string::npos);
  REQUIRE(str.find("alpha7") != std::string::npos);
  REQUIRE(ExactScalar::zero().to_string() == "0");
}
