#pragma once

// Two-step nilpotent metric Lie algebras on a fixed 7-dimensional frame:
// structure constants with exact coefficients, the Chevalley-Eilenberg
// differential and Hodge star on invariant forms, Koszul Christoffel symbols,
// spin connection tables, the curvature tensor, and the arithmetic data of
// the standard lattices together with logarithms of their elements.

#include <array>
#include <cctype>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nucert/exactnum.hpp"
#include "nucert/linalg.hpp"
#include "nucert/superalg.hpp"

namespace nucert::liealg {

using exactnum::Assignment;
using exactnum::ExactScalar;
using exactnum::Rat;
using exactnum::Var;
using linalg::PolyMatrix;
using superalg::SuperForm;

using FrameVector = std::array<ExactScalar, 7>;

inline FrameVector basis_vector(int i) {
  if (i < 1 || i > 7) throw std::out_of_range("frame index out of range");
  FrameVector v{};
  v[i - 1] = ExactScalar::one();
  return v;
}

inline bool is_zero_vector(const FrameVector& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

inline FrameVector add(const FrameVector& x, const FrameVector& y) {
  FrameVector out;
  for (int m = 0; m < 7; ++m) out[m] = x[m] + y[m];
  return out;
}

inline FrameVector scaled(const FrameVector& x, const ExactScalar& s) {
  FrameVector out;
  for (int m = 0; m < 7; ++m) out[m] = x[m] * s;
  return out;
}

class NilpotentLieAlgebra {
 public:
  explicit NilpotentLieAlgebra(std::string name) : name_(std::move(name)) {}

  static NilpotentLieAlgebra h1() {
    NilpotentLieAlgebra alg("h1");
    ExactScalar a = ExactScalar::variable(Var::a);
    alg.set_bracket(1, 2, 6, -a);
    alg.set_bracket(1, 3, 7, -a);
    return alg;
  }

  static NilpotentLieAlgebra h2() {
    NilpotentLieAlgebra alg("h2");
    alg.set_bracket(1, 2, 4, -ExactScalar::variable(Var::a));
    alg.set_bracket(1, 3, 5, -ExactScalar::variable(Var::b));
    alg.set_bracket(2, 3, 6, -ExactScalar::variable(Var::c));
    return alg;
  }

  static NilpotentLieAlgebra abelian() { return NilpotentLieAlgebra("abelian"); }

  const std::string& name() const { return name_; }

  // component of [e_i, e_j] along e_k
  const ExactScalar& c(int i, int j, int k) const {
    return c_[idx(i)][idx(j)][idx(k)];
  }

  const FrameVector& bracket_basis(int i, int j) const {
    return c_[idx(i)][idx(j)];
  }

  void set_bracket(int i, int j, int k, const ExactScalar& coeff) {
    if (i == j) throw std::invalid_argument("bracket of a vector with itself");
    c_[idx(i)][idx(j)][idx(k)] = coeff;
    c_[idx(j)][idx(i)][idx(k)] = -coeff;
  }

  FrameVector bracket(const FrameVector& x, const FrameVector& y) const {
    FrameVector out{};
    for (int i = 0; i < 7; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < 7; ++j) {
        if (y[j].is_zero()) continue;
        const FrameVector& cij = c_[i][j];
        for (int k = 0; k < 7; ++k) {
          if (cij[k].is_zero()) continue;
          out[k] = out[k] + x[i] * y[j] * cij[k];
        }
      }
    }
    return out;
  }

  bool jacobi_holds() const {
    for (int i = 1; i <= 7; ++i)
      for (int j = i + 1; j <= 7; ++j)
        for (int k = j + 1; k <= 7; ++k) {
          FrameVector sum = bracket(basis_vector(i), bracket_basis(j, k));
          sum = add(sum, bracket(basis_vector(j), bracket_basis(k, i)));
          sum = add(sum, bracket(basis_vector(k), bracket_basis(i, j)));
          if (!is_zero_vector(sum)) return false;
        }
    return true;
  }

  bool is_two_step() const {
    for (int i = 1; i <= 7; ++i)
      for (int j = i + 1; j <= 7; ++j)
        for (int k = 1; k <= 7; ++k)
          if (!is_zero_vector(bracket(basis_vector(k), bracket_basis(i, j))))
            return false;
    return true;
  }

 private:
  static int idx(int i) {
    if (i < 1 || i > 7) throw std::out_of_range("frame index out of range");
    return i - 1;
  }

  std::string name_;
  std::array<std::array<FrameVector, 7>, 7> c_{};
};

struct InvariantMetric {
  PolyMatrix gram;
  bool orthonormal = false;

  static InvariantMetric orthonormal_frame() {
    return {PolyMatrix::identity(7), true};
  }

  static InvariantMetric diagonal(const std::array<ExactScalar, 7>& d) {
    InvariantMetric g{PolyMatrix(7, 7), false};
    bool unit = true;
    for (int m = 0; m < 7; ++m) {
      g.gram.at(m, m) = d[m];
      if (!(d[m] == ExactScalar::one())) unit = false;
    }
    g.orthonormal = unit;
    return g;
  }

  bool is_diagonal() const {
    for (int r = 0; r < 7; ++r)
      for (int s = 0; s < 7; ++s)
        if (r != s && !gram.at(r, s).is_zero()) return false;
    return true;
  }
};

inline ExactScalar frame_inner(const InvariantMetric& g, const FrameVector& x,
                               const FrameVector& y) {
  ExactScalar out;
  for (int r = 0; r < 7; ++r)
    for (int s = 0; s < 7; ++s) {
      if (g.gram.at(r, s).is_zero()) continue;
      out = out + g.gram.at(r, s) * x[r] * y[s];
    }
  return out;
}

// sample point with all dimensionful parameters nonzero (and a = b + c)
inline Assignment generic_sample_point() {
  Assignment at;
  at.set(Var::a, 2.0).set(Var::b, 1.25).set(Var::c, 0.75);
  at.set(Var::t, 1.0).set(Var::c_aux, 1.0);
  for (int k = 1; k <= 7; ++k) at.set(exactnum::alpha_var(k), 0.1 * k + 0.3);
  return at;
}

namespace detail {

inline void require_nondegenerate(const InvariantMetric& g) {
  if (!g.is_diagonal()) throw std::invalid_argument("diagonal metric expected");
  Assignment at = generic_sample_point();
  for (int m = 0; m < 7; ++m) {
    std::complex<double> v = g.gram.at(m, m).eval(at);
    if (std::abs(v.imag()) > 1e-9 || v.real() <= 1e-9)
      throw std::domain_error("degenerate metric");
  }
}

}  // namespace detail

// exterior differential determined by d e^k (x, y) = -e^k([x, y]),
// extended to products as a degree-one derivation
inline SuperForm ce_generator_differential(const NilpotentLieAlgebra& alg,
                                           int k) {
  SuperForm d;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      const ExactScalar& c = alg.c(i, j, k);
      if (c.is_zero()) continue;
      std::uint32_t mask = (1u << (i - 1)) | (1u << (j - 1));
      d += SuperForm::term(mask, 0, -c);
    }
  return d;
}

inline SuperForm ce_differential(const NilpotentLieAlgebra& alg,
                                 const SuperForm& form) {
  SuperForm out;
  for (const auto& [key, coeff] : form.terms()) {
    if (key.second != 0)
      throw std::invalid_argument("pure tangent form expected");
    int rank = 0;
    for (int p = 1; p <= 7; ++p) {
      if (!(key.first >> (p - 1) & 1)) continue;
      ++rank;
      // moving d past the first rank-1 generators is the only sign source:
      // the resulting two-form slides back to the front freely
      ExactScalar lead = (rank % 2) ? coeff : -coeff;
      SuperForm rest = SuperForm::term(key.first & ~(1u << (p - 1)), 0, lead);
      out += super_mul(ce_generator_differential(alg, p), rest);
    }
  }
  return out;
}

// star(e^I) = sign e^{I^c} with sign fixed by e^I wedge star(e^I) = vol,
// in the orthonormal frame with positive volume form e^{1...7}
inline SuperForm hodge_star(const InvariantMetric& g, const SuperForm& form) {
  if (!g.orthonormal) throw std::invalid_argument("orthonormal frame expected");
  SuperForm out;
  for (const auto& [key, coeff] : form.terms()) {
    if (key.second != 0)
      throw std::invalid_argument("pure tangent form expected");
    std::uint32_t comp = superalg::detail::kVFull & ~key.first;
    int sign = superalg::detail::shuffle_sign(key.first, comp);
    out += SuperForm::term(comp, 0, sign == 1 ? coeff : -coeff);
  }
  return out;
}

inline SuperForm volume_form() {
  return SuperForm::term(superalg::detail::kVFull, 0, ExactScalar::one());
}

struct Christoffel {
  // gamma[i][j][k] is the e_k component of the derivative of e_j along e_i
  std::array<std::array<FrameVector, 7>, 7> gamma{};

  const ExactScalar& at(int i, int j, int k) const {
    return gamma[check(i) - 1][check(j) - 1][check(k) - 1];
  }

  const FrameVector& derivative(int i, int j) const {
    return gamma[check(i) - 1][check(j) - 1];
  }

  FrameVector covariant_derivative(const FrameVector& x,
                                   const FrameVector& y) const {
    FrameVector out{};
    for (int i = 0; i < 7; ++i) {
      if (x[i].is_zero()) continue;
      for (int j = 0; j < 7; ++j) {
        if (y[j].is_zero()) continue;
        for (int k = 0; k < 7; ++k) {
          const ExactScalar& gkk = gamma[i][j][k];
          if (gkk.is_zero()) continue;
          out[k] = out[k] + x[i] * y[j] * gkk;
        }
      }
    }
    return out;
  }

 private:
  static int check(int i) {
    if (i < 1 || i > 7) throw std::out_of_range("frame index out of range");
    return i;
  }
};

inline Christoffel koszul_christoffel(const NilpotentLieAlgebra& alg,
                                      const InvariantMetric& g) {
  detail::require_nondegenerate(g);
  ExactScalar half = ExactScalar::rational(1, 2);
  Christoffel ch;
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j)
      for (int k = 1; k <= 7; ++k) {
        ExactScalar twice =
            frame_inner(g, alg.bracket_basis(i, j), basis_vector(k)) -
            frame_inner(g, alg.bracket_basis(j, k), basis_vector(i)) +
            frame_inner(g, alg.bracket_basis(k, i), basis_vector(j));
        if (twice.is_zero()) continue;
        ch.gamma[i - 1][j - 1][k - 1] =
            half * twice.div_exact(g.gram.at(k - 1, k - 1));
      }
  return ch;
}

struct SpinConnectionTerm {
  int j;
  int k;
  ExactScalar coeff;
};

// omega_i = 1/2 sum_{j<k} gamma_{ijk} e_j e_k, the even Clifford element
// implementing the spinor derivative along e_i
using SpinConnection = std::array<std::vector<SpinConnectionTerm>, 7>;

inline SpinConnection spin_connection(const Christoffel& ch) {
  ExactScalar half = ExactScalar::rational(1, 2);
  SpinConnection omega;
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j)
      for (int k = j + 1; k <= 7; ++k) {
        const ExactScalar& gkk = ch.at(i, j, k);
        if (gkk.is_zero()) continue;
        omega[i - 1].push_back({j, k, half * gkk});
      }
  return omega;
}

struct RiemannTable {
  // value[i][j][k] holds R(e_i, e_j) e_k as a frame vector
  std::array<std::array<std::array<FrameVector, 7>, 7>, 7> value{};

  const FrameVector& at(int i, int j, int k) const {
    return value[i - 1][j - 1][k - 1];
  }

  // g(R(e_i, e_j) e_k, e_l) in the orthonormal frame
  const ExactScalar& component(int i, int j, int k, int l) const {
    return value[i - 1][j - 1][k - 1][l - 1];
  }
};

inline RiemannTable riemann_curvature(const NilpotentLieAlgebra& alg,
                                      const Christoffel& ch) {
  RiemannTable table;
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j)
      for (int k = 1; k <= 7; ++k) {
        FrameVector r = ch.covariant_derivative(basis_vector(i),
                                                ch.derivative(j, k));
        r = add(r, scaled(ch.covariant_derivative(basis_vector(j),
                                                  ch.derivative(i, k)),
                          -ExactScalar::one()));
        r = add(r, scaled(ch.covariant_derivative(alg.bracket_basis(i, j),
                                                  basis_vector(k)),
                          -ExactScalar::one()));
        table.value[i - 1][j - 1][k - 1] = r;
      }
  return table;
}

struct LatticeSpec {
  std::string family;
  long r1 = 1;
  long r2 = 1;

  static LatticeSpec h1(long r1, long r2) {
    if (r1 <= 0 || r2 <= 0 || r2 % r1 != 0)
      throw std::domain_error(
          "lattice parameters must be positive with r1 dividing r2");
    return {"h1", r1, r2};
  }

  static LatticeSpec h2() { return {"h2", 1, 1}; }
};

using RatVector7 = std::array<Rat, 7>;

// coordinates of log gamma for the lattice element with integer word m,
// multiplied out with the two-step Baker-Campbell-Hausdorff formula
inline RatVector7 lattice_log(const LatticeSpec& lat,
                              const std::array<long, 7>& m) {
  RatVector7 x{};
  if (lat.family == "h1") {
    for (int k = 0; k < 5; ++k) x[k] = m[k];
    x[5] = Rat(m[0]) * m[1] / 2 + Rat(m[5]) / lat.r2;
    x[6] = Rat(m[0]) * m[2] / 2 + Rat(m[6]) / lat.r1;
    return x;
  }
  if (lat.family == "h2") {
    for (int k = 0; k < 3; ++k) x[k] = m[k];
    x[3] = Rat(m[0]) * m[1] / 2 + m[3];
    x[4] = Rat(m[0]) * m[2] / 2 + m[4];
    x[5] = Rat(m[1]) * m[2] / 2 + m[5];
    x[6] = m[6];
    return x;
  }
  throw std::invalid_argument("unknown lattice family");
}

namespace detail {

inline std::optional<long> as_integer(const Rat& q) {
  if (boost::multiprecision::denominator(q) != 1) return std::nullopt;
  return boost::multiprecision::numerator(q).convert_to<long>();
}

}  // namespace detail

// inverts lattice_log; empty when the point is not the logarithm of a
// lattice element
inline std::optional<std::array<long, 7>> lattice_log_solve(
    const LatticeSpec& lat, const RatVector7& x) {
  std::array<long, 7> m{};
  auto take = [&](int slot, const Rat& q) {
    auto v = detail::as_integer(q);
    if (v) m[slot] = *v;
    return v.has_value();
  };
  if (lat.family == "h1") {
    for (int k = 0; k < 5; ++k)
      if (!take(k, x[k])) return std::nullopt;
    if (!take(5, (x[5] - Rat(m[0]) * m[1] / 2) * lat.r2)) return std::nullopt;
    if (!take(6, (x[6] - Rat(m[0]) * m[2] / 2) * lat.r1)) return std::nullopt;
    return m;
  }
  if (lat.family == "h2") {
    for (int k = 0; k < 3; ++k)
      if (!take(k, x[k])) return std::nullopt;
    if (!take(3, x[3] - Rat(m[0]) * m[1] / 2)) return std::nullopt;
    if (!take(4, x[4] - Rat(m[0]) * m[2] / 2)) return std::nullopt;
    if (!take(5, x[5] - Rat(m[1]) * m[2] / 2)) return std::nullopt;
    if (!take(6, x[6])) return std::nullopt;
    return m;
  }
  throw std::invalid_argument("unknown lattice family");
}

namespace detail {

inline std::optional<Var> var_by_name(const std::string& name) {
  static const std::pair<const char*, Var> table[] = {
      {"pi", Var::pi},         {"a", Var::a},
      {"b", Var::b},           {"c", Var::c},
      {"alpha1", Var::alpha1}, {"alpha2", Var::alpha2},
      {"alpha3", Var::alpha3}, {"alpha4", Var::alpha4},
      {"alpha5", Var::alpha5}, {"alpha6", Var::alpha6},
      {"alpha7", Var::alpha7}, {"t", Var::t},
      {"c_aux", Var::c_aux}};
  for (const auto& [n, v] : table)
    if (name == n) return v;
  return std::nullopt;
}

inline ExactScalar parse_coefficient(const std::string& text) {
  ExactScalar out = ExactScalar::one();
  std::string token;
  bool saw_factor = false;
  auto flush = [&] {
    if (token.empty()) return;
    std::string body = token;
    if (body == "-") {
      out = -out;
    } else {
      if (body.front() == '-') {
        out = -out;
        body.erase(body.begin());
      }
      if (std::isdigit(static_cast<unsigned char>(body.front()))) {
        auto slash = body.find('/');
        long num = std::stol(body.substr(0, slash));
        long den = slash == std::string::npos
                       ? 1
                       : std::stol(body.substr(slash + 1));
        out = out * ExactScalar::rational(num, den);
      } else {
        auto v = var_by_name(body);
        if (!v) throw std::invalid_argument("unknown coefficient symbol: " + body);
        out = out * ExactScalar::variable(*v);
      }
      saw_factor = true;
    }
    token.clear();
  };
  for (char ch : text) {
    if (ch == '*' || std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else {
      token.push_back(ch);
    }
  }
  flush();
  if (!saw_factor) throw std::invalid_argument("empty bracket coefficient");
  return out;
}

}  // namespace detail

// loads an algebra from lines of the form
//   dim 7
//   [1,2] = -a * e6
inline NilpotentLieAlgebra parse_algebra(const std::string& text) {
  NilpotentLieAlgebra alg("custom");
  bool saw_dim = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.compare(first, 3, "dim") == 0) {
      std::istringstream row(line);
      std::string word;
      int n = 0;
      row >> word >> n;
      if (n != 7) throw std::invalid_argument("only dimension 7 is supported");
      saw_dim = true;
      continue;
    }
    std::size_t open = line.find('['), comma = line.find(','),
                close = line.find(']'), eq = line.find('=');
    std::size_t tail = line.rfind('e');
    if (open == std::string::npos || comma == std::string::npos ||
        close == std::string::npos || eq == std::string::npos ||
        tail == std::string::npos || tail < eq)
      throw std::invalid_argument("malformed bracket line: " + line);
    int i = std::stoi(line.substr(open + 1, comma - open - 1));
    int j = std::stoi(line.substr(comma + 1, close - comma - 1));
    int k = std::stoi(line.substr(tail + 1));
    ExactScalar coeff =
        detail::parse_coefficient(line.substr(eq + 1, tail - eq - 1));
    alg.set_bracket(i, j, k, coeff);
  }
  if (!saw_dim) throw std::invalid_argument("missing dim header");
  return alg;
}

}  // namespace nucert::liealg
