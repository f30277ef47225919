// Exact scalar arithmetic: Laurent polynomials over the Gaussian rationals in
// a fixed list of real indeterminates. The circle constant is carried as a
// formal indeterminate with its own integer grade, so statements like
// "this determinant is a degree-8 polynomial in pi with nonzero leading
// coefficient" are decidable by inspecting exponents.
#pragma once

#include <algorithm>
#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nucert::exactnum {

using Rat = boost::multiprecision::cpp_rational;

/// Gaussian rational p + i q with exact components.
struct GaussRat {
  Rat re{0};
  Rat im{0};

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  GaussRat(int n) : re(n) {}

  static GaussRat i() { return GaussRat(Rat(0), Rat(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  GaussRat conj() const { return {re, -im}; }

  GaussRat operator+(const GaussRat& o) const { return {re + o.re, im + o.im}; }
  GaussRat operator-(const GaussRat& o) const { return {re - o.re, im - o.im}; }
  GaussRat operator-() const { return {-re, -im}; }
  GaussRat operator*(const GaussRat& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  GaussRat operator/(const GaussRat& o) const {
    Rat n = o.re * o.re + o.im * o.im;
    if (n == 0) throw std::domain_error("division by zero");
    return {(re * o.re + im * o.im) / n, (im * o.re - re * o.im) / n};
  }
  bool operator==(const GaussRat& o) const { return re == o.re && im == o.im; }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

/// The fixed, ordered indeterminate list shared by the whole library.
enum class Var : int {
  pi = 0,
  a,
  b,
  c,
  alpha1,
  alpha2,
  alpha3,
  alpha4,
  alpha5,
  alpha6,
  alpha7,
  t,
  c_aux,
};
inline constexpr int kNumVars = 13;

inline const char* var_name(Var v) {
  static constexpr const char* names[kNumVars] = {
      "pi",     "a",      "b",      "c",      "alpha1", "alpha2", "alpha3",
      "alpha4", "alpha5", "alpha6", "alpha7", "t",      "c_aux"};
  return names[static_cast<int>(v)];
}

inline Var alpha_var(int k) {
  if (k < 1 || k > 7) throw std::out_of_range("alpha index");
  return static_cast<Var>(static_cast<int>(Var::alpha1) + k - 1);
}

using ExpVec = std::array<std::int16_t, kNumVars>;

/// Numeric assignment of the indeterminates, used for floating evaluation.
/// The circle constant is pre-assigned; everything else defaults to zero and
/// can be overridden.
struct Assignment {
  std::array<double, kNumVars> values{};

  Assignment() {
    values.fill(0.0);
    values[static_cast<int>(Var::pi)] = std::numbers::pi;
  }
  Assignment& set(Var v, double x) {
    values[static_cast<int>(v)] = x;
    return *this;
  }
  double get(Var v) const { return values[static_cast<int>(v)]; }
};

/// Exact scalar: finitely many Laurent monomials with Gaussian-rational
/// coefficients, kept in canonical form (sorted exponent vectors, no zero
/// coefficients).
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(int n) { *this = from_coeff(GaussRat(n)); }
  ExactScalar(const GaussRat& c) { *this = from_coeff(c); }

  static ExactScalar zero() { return {}; }
  static ExactScalar one() { return from_coeff(GaussRat(1)); }
  static ExactScalar i() { return from_coeff(GaussRat::i()); }
  static ExactScalar rational(long num, long den) {
    return from_coeff(GaussRat(Rat(num, den)));
  }
  static ExactScalar from_coeff(const GaussRat& c) {
    ExactScalar s;
    if (!c.is_zero()) s.terms_[ExpVec{}] = c;
    return s;
  }
  static ExactScalar variable(Var v, int exponent = 1) {
    ExactScalar s;
    if (exponent == 0) return one();
    ExpVec e{};
    e[static_cast<int>(v)] = static_cast<std::int16_t>(exponent);
    s.terms_[e] = GaussRat(1);
    return s;
  }
  static ExactScalar pi_pow(int k) { return variable(Var::pi, k); }

  bool is_zero() const { return terms_.empty(); }
  bool operator==(const ExactScalar& o) const { return terms_ == o.terms_; }
  bool operator!=(const ExactScalar& o) const { return !(*this == o); }

  std::size_t term_count() const { return terms_.size(); }
  const std::map<ExpVec, GaussRat>& terms() const { return terms_; }

  /// True when the scalar is a single monomial (or zero).
  bool is_monomial() const { return terms_.size() <= 1; }

  /// True when the scalar is a rational constant (no indeterminates).
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first == ExpVec{});
  }
  GaussRat constant_value() const {
    if (!is_constant()) throw std::domain_error("scalar is not constant");
    return terms_.empty() ? GaussRat(0) : terms_.begin()->second;
  }

  ExactScalar operator-() const {
    ExactScalar r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }

  ExactScalar operator+(const ExactScalar& o) const {
    ExactScalar r = *this;
    for (const auto& [e, c] : o.terms_) {
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        r.terms_[e] = c;
      } else {
        it->second = it->second + c;
        if (it->second.is_zero()) r.terms_.erase(it);
      }
    }
    return r;
  }
  ExactScalar operator-(const ExactScalar& o) const { return *this + (-o); }

  ExactScalar operator*(const ExactScalar& o) const {
    ExactScalar r;
    for (const auto& [e1, c1] : terms_) {
      for (const auto& [e2, c2] : o.terms_) {
        ExpVec e{};
        for (int k = 0; k < kNumVars; ++k)
          e[k] = static_cast<std::int16_t>(e1[k] + e2[k]);
        GaussRat c = c1 * c2;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
          if (!c.is_zero()) r.terms_[e] = c;
        } else {
          it->second = it->second + c;
          if (it->second.is_zero()) r.terms_.erase(it);
        }
      }
    }
    return r;
  }

  ExactScalar& operator+=(const ExactScalar& o) { return *this = *this + o; }
  ExactScalar& operator-=(const ExactScalar& o) { return *this = *this - o; }
  ExactScalar& operator*=(const ExactScalar& o) { return *this = *this * o; }

  /// Exact division by a single-monomial scalar (Laurent exponents shift).
  ExactScalar div_exact(const ExactScalar& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero");
    if (!d.is_monomial())
      throw std::domain_error("exact division requires a monomial divisor");
    const auto& [de, dc] = *d.terms_.begin();
    ExactScalar r;
    for (const auto& [e, c] : terms_) {
      ExpVec q{};
      for (int k = 0; k < kNumVars; ++k)
        q[k] = static_cast<std::int16_t>(e[k] - de[k]);
      r.terms_[q] = c / dc;
    }
    return r;
  }

  /// Complex conjugation: all indeterminates are real, so only coefficients
  /// are conjugated.
  ExactScalar conj() const {
    ExactScalar r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c.conj();
    return r;
  }

  /// The common grade in the circle constant, when homogeneous.
  /// Zero scalars report grade 0.
  std::optional<int> pi_power() const {
    if (terms_.empty()) return 0;
    int g = terms_.begin()->first[static_cast<int>(Var::pi)];
    for (const auto& [e, c] : terms_)
      if (e[static_cast<int>(Var::pi)] != g) return std::nullopt;
    return g;
  }

  int degree_in(Var v) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      int x = e[static_cast<int>(v)];
      if (first || x > d) d = x;
      first = false;
    }
    return d;
  }
  int min_degree_in(Var v) const {
    int d = 0;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      int x = e[static_cast<int>(v)];
      if (first || x < d) d = x;
      first = false;
    }
    return d;
  }

  /// The coefficient of v^k, as a scalar not involving v.
  ExactScalar coeff_of(Var v, int k) const {
    ExactScalar r;
    for (const auto& [e, c] : terms_) {
      if (e[static_cast<int>(v)] == k) {
        ExpVec q = e;
        q[static_cast<int>(v)] = 0;
        r.terms_[q] = c;
      }
    }
    return r;
  }

  /// Substitute an exact value for one indeterminate. Negative exponents
  /// require the value to be a nonzero monomial.
  ExactScalar substitute(Var v, const ExactScalar& value) const {
    ExactScalar out;
    for (const auto& [e, c] : terms_) {
      int k = e[static_cast<int>(v)];
      ExpVec q = e;
      q[static_cast<int>(v)] = 0;
      ExactScalar term;
      term.terms_[q] = c;
      if (k > 0) {
        for (int j = 0; j < k; ++j) term = term * value;
      } else if (k < 0) {
        ExactScalar inv = value.monomial_inverse();
        for (int j = 0; j < -k; ++j) term = term * inv;
      }
      out += term;
    }
    return out;
  }

  /// Inverse of a single-monomial scalar.
  ExactScalar monomial_inverse() const {
    return one().div_exact(*this);
  }

  std::complex<double> eval(const Assignment& at) const {
    std::complex<double> sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double mag = 1.0;
      for (int k = 0; k < kNumVars; ++k) {
        if (e[k] != 0) mag *= std::pow(at.values[k], static_cast<int>(e[k]));
      }
      sum += c.to_complex() * mag;
    }
    return sum;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
      std::string cs = coeff_string(c);
      if (!first) os << (cs[0] == '-' ? " - " : " + ");
      else if (cs[0] == '-') os << "-";
      std::string body = cs[0] == '-' ? cs.substr(1) : cs;
      os << body;
      for (int k = 0; k < kNumVars; ++k) {
        if (e[k] != 0) {
          os << "*" << var_name(static_cast<Var>(k));
          if (e[k] != 1) os << "^" << e[k];
        }
      }
      first = false;
    }
    return os.str();
  }

 private:
  static std::string rat_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
  }
  static std::string coeff_string(const GaussRat& c) {
    if (c.im == 0) return rat_string(c.re);
    if (c.re == 0) {
      if (c.im == 1) return "i";
      if (c.im == -1) return "-i";
      return rat_string(c.im) + "*i";
    }
    std::ostringstream os;
    os << "(" << rat_string(c.re) << (c.im > 0 ? "+" : "-");
    Rat ai = c.im > 0 ? c.im : Rat(-c.im);
    if (ai != 1) os << rat_string(ai) << "*";
    os << "i)";
    return os.str();
  }

  std::map<ExpVec, GaussRat> terms_;
};

inline ExactScalar operator*(int n, const ExactScalar& s) {
  return ExactScalar(n) * s;
}

/// Addition restricted to scalars of equal grade in the circle constant.
/// This is the graded-arithmetic entry point; the unrestricted ring addition
/// is operator+.
inline ExactScalar add_graded(const ExactScalar& x, const ExactScalar& y) {
  auto gx = x.pi_power();
  auto gy = y.pi_power();
  if (!gx || !gy || (!x.is_zero() && !y.is_zero() && *gx != *gy))
    throw std::domain_error("inhomogeneous pi-grade");
  return x + y;
}

/// beta_k = 2 pi i alpha_k, the dual-lattice frequency attached to the k-th
/// coordinate.
inline ExactScalar beta(int k) {
  return ExactScalar(2) * ExactScalar::i() * ExactScalar::pi_pow(1) *
         ExactScalar::variable(alpha_var(k));
}

/// |x|^2 = x * conj(x).
inline ExactScalar norm_sq(const ExactScalar& x) { return x * x.conj(); }

/// Rewrite v^e for e >= power as v^(e-power) * rhs until all exponents of v
/// lie below power. The replacement must not involve v. This realises the
/// quotient by the relation v^power = rhs.
inline ExactScalar reduce_power(const ExactScalar& s, Var v, int power,
                                const ExactScalar& rhs) {
  if (rhs.degree_in(v) != 0 || rhs.min_degree_in(v) != 0)
    throw std::invalid_argument("replacement must not involve the variable");
  ExactScalar cur = s;
  for (;;) {
    int d = cur.degree_in(v);
    if (d < power) return cur;
    ExactScalar high = cur.coeff_of(v, d);
    ExactScalar high_term =
        high * ExactScalar::variable(v, d);
    ExactScalar replaced =
        high * ExactScalar::variable(v, d - power) * rhs;
    cur = cur - high_term + replaced;
  }
}

/// Certificate that a polynomial takes strictly positive values whenever one
/// of the watched indeterminates is nonzero (other indeterminates real, the
/// excluded ones nonzero as well): every coefficient is a positive rational,
/// every exponent is even and nonnegative, and for each watched variable the
/// polynomial contains a monomial involving no other indeterminate except
/// possibly the circle constant.
struct PositivityCertificate {
  bool all_coefficients_positive = false;
  bool all_exponents_even = false;
  std::array<bool, kNumVars> pure_witness{};

  bool positive_whenever_nonzero(Var v) const {
    return all_coefficients_positive && all_exponents_even &&
           pure_witness[static_cast<int>(v)];
  }
};

inline PositivityCertificate positivity_certificate(const ExactScalar& s) {
  PositivityCertificate cert;
  cert.all_coefficients_positive = !s.is_zero();
  cert.all_exponents_even = true;
  for (const auto& [e, c] : s.terms()) {
    if (!(c.im == 0 && c.re > 0)) cert.all_coefficients_positive = false;
    int support = 0;
    int watched = -1;
    for (int k = 0; k < kNumVars; ++k) {
      if (e[k] < 0 || e[k] % 2 != 0) cert.all_exponents_even = false;
      if (e[k] != 0 && k != static_cast<int>(Var::pi)) {
        ++support;
        watched = k;
      }
    }
    if (support == 1 && e[watched] > 0) cert.pure_witness[watched] = true;
  }
  return cert;
}

}  // namespace nucert::exactnum
