#pragma once

// Dictionary between unit spinors and positive three-forms on the fixed
// 7-dimensional frame: the induced bilinear form with its volume
// normalization, closedness, the intrinsic endomorphism, and the reduction
// of first-family metrics to the diagonal normal form.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "nucert/clifford.hpp"
#include "nucert/exactnum.hpp"
#include "nucert/liealg.hpp"
#include "nucert/linalg.hpp"
#include "nucert/superalg.hpp"

namespace nucert::g2 {

using clifford::RealSpinor;
using exactnum::Assignment;
using exactnum::ExactScalar;
using exactnum::GaussRat;
using exactnum::Rat;
using exactnum::Var;
using liealg::InvariantMetric;
using liealg::NilpotentLieAlgebra;
using linalg::PolyMatrix;
using superalg::SuperForm;

namespace detail {

inline int sort_triple(int& i, int& j, int& k) {
  int sign = 1;
  auto flip = [&](int& x, int& y) {
    if (x > y) {
      std::swap(x, y);
      sign = -sign;
    }
  };
  flip(i, j);
  flip(j, k);
  flip(i, j);
  return sign;
}

}  // namespace detail

class ThreeForm {
 public:
  static ThreeForm standard() {
    return family({ExactScalar::one(), ExactScalar::one(), ExactScalar::one(),
                   ExactScalar::one(), -ExactScalar::one(),
                   -ExactScalar::one()});
  }

  // b1 e^123 + b2 e^145 + b3 e^167 + b4 e^246 + b5 (e^257 + e^356) + b6 e^347
  static ThreeForm family(const std::array<ExactScalar, 6>& b) {
    ThreeForm f;
    f.set(1, 2, 3, b[0]);
    f.set(1, 4, 5, b[1]);
    f.set(1, 6, 7, b[2]);
    f.set(2, 4, 6, b[3]);
    f.set(2, 5, 7, b[4]);
    f.set(3, 5, 6, b[4]);
    f.set(3, 4, 7, b[5]);
    return f;
  }

  void set(int i, int j, int k, const ExactScalar& c) {
    int sign = detail::sort_triple(i, j, k);
    if (i == j || j == k)
      throw std::invalid_argument("three-form indices must be distinct");
    check_range(i);
    check_range(k);
    std::uint32_t mask =
        (1u << (i - 1)) | (1u << (j - 1)) | (1u << (k - 1));
    ExactScalar value = sign == 1 ? c : -c;
    if (value.is_zero())
      coeff_.erase(mask);
    else
      coeff_[mask] = value;
  }

  ExactScalar at(int i, int j, int k) const {
    if (i == j || j == k || i == k) return ExactScalar::zero();
    int sign = detail::sort_triple(i, j, k);
    check_range(i);
    check_range(k);
    std::uint32_t mask =
        (1u << (i - 1)) | (1u << (j - 1)) | (1u << (k - 1));
    auto it = coeff_.find(mask);
    if (it == coeff_.end()) return ExactScalar::zero();
    return sign == 1 ? it->second : -it->second;
  }

  const std::map<std::uint32_t, ExactScalar>& coefficients() const {
    return coeff_;
  }

  SuperForm as_superform() const {
    SuperForm f;
    for (const auto& [mask, c] : coeff_) f += SuperForm::term(mask, 0, c);
    return f;
  }

  bool operator==(const ThreeForm& o) const { return coeff_ == o.coeff_; }
  bool operator!=(const ThreeForm& o) const { return !(*this == o); }

 private:
  static void check_range(int i) {
    if (i < 1 || i > 7) throw std::out_of_range("frame index out of range");
  }

  std::map<std::uint32_t, ExactScalar> coeff_;
};

namespace detail {

inline SuperForm interior_product(int i, const SuperForm& f) {
  SuperForm out;
  std::uint32_t bit = 1u << (i - 1);
  for (const auto& [key, c] : f.terms()) {
    if (key.second != 0)
      throw std::invalid_argument("pure tangent form expected");
    if (!(key.first & bit)) continue;
    int before = __builtin_popcount(key.first & (bit - 1));
    out += SuperForm::term(key.first & ~bit, 0, before % 2 ? -c : c);
  }
  return out;
}

inline ExactScalar top_coefficient(const SuperForm& f) {
  for (const auto& [key, c] : f.terms())
    if (key.first == superalg::detail::kVFull && key.second == 0) return c;
  return ExactScalar::zero();
}

inline std::optional<Rat> rational_nth_root(const Rat& q, int n) {
  using boost::multiprecision::cpp_int;
  if (q == 0) return Rat(0);
  bool negative = q < 0;
  if (negative && n % 2 == 0) return std::nullopt;
  auto int_root = [n](const cpp_int& v) -> std::optional<cpp_int> {
    if (v == 0) return cpp_int(0);
    cpp_int lo = 1, hi = 1;
    while (boost::multiprecision::pow(hi, n) < v) hi <<= 1;
    while (lo < hi) {
      cpp_int mid = (lo + hi) / 2;
      if (boost::multiprecision::pow(mid, n) < v)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (boost::multiprecision::pow(lo, n) == v) return lo;
    return std::nullopt;
  };
  Rat mag = negative ? Rat(-q) : q;
  auto num = int_root(boost::multiprecision::numerator(mag));
  auto den = int_root(boost::multiprecision::denominator(mag));
  if (!num || !den) return std::nullopt;
  Rat root = Rat(*num) / Rat(*den);
  return negative ? Rat(-root) : root;
}

inline std::optional<ExactScalar> monomial_nth_root(const ExactScalar& s,
                                                    int n) {
  if (s.is_zero()) return ExactScalar::zero();
  if (!s.is_monomial()) return std::nullopt;
  const auto& [exps, coeff] = *s.terms().begin();
  if (coeff.im != 0) return std::nullopt;
  auto root = rational_nth_root(coeff.re, n);
  if (!root) return std::nullopt;
  ExactScalar out = ExactScalar::from_coeff(GaussRat(*root));
  for (int v = 0; v < exactnum::kNumVars; ++v) {
    if (exps[v] == 0) continue;
    if (exps[v] % n != 0) return std::nullopt;
    out = out * ExactScalar::variable(static_cast<Var>(v), exps[v] / n);
  }
  return out;
}

// signs of the leading principal minors at a generic numeric point:
// +1 for positive-definite, -1 for negative-definite, 0 otherwise
inline int numeric_definiteness(const PolyMatrix& m) {
  Assignment at = liealg::generic_sample_point();
  bool pos = true, neg = true;
  for (int k = 1; k <= m.rows(); ++k) {
    std::vector<int> lead(k);
    for (int r = 0; r < k; ++r) lead[r] = r;
    std::complex<double> minor = m.submatrix(lead, lead).det().eval(at);
    if (std::abs(minor.imag()) > 1e-9 * (1 + std::abs(minor.real())))
      return 0;
    double v = minor.real();
    if (std::abs(v) < 1e-12) return 0;
    if (v < 0) pos = false;
    if ((k % 2 == 1) == (v > 0)) neg = false;
    if (!pos && !neg) return 0;
  }
  return pos ? 1 : -1;
}

}  // namespace detail

inline ThreeForm three_form_from_spinor(const RealSpinor& phi) {
  ExactScalar norm = clifford::real_inner(phi, phi);
  if (!(norm == ExactScalar(2)))
    throw std::domain_error("spinor is not unit length");
  ThreeForm f;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j)
      for (int k = j + 1; k <= 7; ++k) {
        RealSpinor s = clifford::clifford_mul(
            i, clifford::clifford_mul(j, clifford::clifford_mul(k, phi)));
        ExactScalar c = clifford::real_inner(s, phi);
        f.set(i, j, k, c.div_exact(ExactScalar(2)));
      }
  return f;
}

struct SpinorSolution {
  RealSpinor spinor;
  bool exactly_unit;
  bool sign_ambiguous = true;
};

// recovers the compatible spinor from the pairwise products: for every
// i < j the operator e_i e_j + sum_k phi_ijk e_k must annihilate it, and
// the combined system has a one-dimensional solution space exactly for
// positive three-forms
inline SpinorSolution spinor_from_three_form(const ThreeForm& f) {
  std::optional<PolyMatrix> stack;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j) {
      PolyMatrix block =
          clifford::clifford_action_f(i) * clifford::clifford_action_f(j);
      for (int k = 1; k <= 7; ++k) {
        ExactScalar c = f.at(i, j, k);
        if (c.is_zero()) continue;
        block = block + clifford::clifford_action_f(k).scaled(c);
      }
      stack = stack ? PolyMatrix::vstack(*stack, block) : block;
    }
  auto kernel = linalg::kernel_basis(*stack);
  if (kernel.size() != 1) throw std::domain_error("not a G2-form");
  RealSpinor phi;
  for (int r = 0; r < 8; ++r) phi.f[r] = kernel[0][r];
  ExactScalar norm = clifford::real_inner(phi, phi);
  if (norm.is_constant()) {
    GaussRat q = norm.constant_value();
    if (q.im == 0 && q.re > 0) {
      auto root = detail::rational_nth_root(Rat(2) / q.re, 2);
      if (root) {
        ExactScalar s = ExactScalar::from_coeff(GaussRat(Rat(*root)));
        for (auto& c : phi.f) c = c * s;
        return {phi, true};
      }
    }
  }
  return {phi, false};
}

struct InducedMetric {
  // volume-weighted Gram matrix: entry (i,j) is the coefficient of the
  // full-frame volume in (e_i . phi) ^ (e_j . phi) ^ phi, divided by six
  PolyMatrix b_matrix;
  ExactScalar det_b;
  // +1 when b_matrix is positive-definite, -1 when negative-definite
  int orientation = 1;
  // exact ninth root of det_b and the normalized metric, when the root
  // stays inside the coefficient ring
  std::optional<ExactScalar> volume_scale;
  std::optional<PolyMatrix> metric;
};

inline InducedMetric metric_from_three_form(const ThreeForm& f) {
  SuperForm sf = f.as_superform();
  std::array<SuperForm, 7> contraction;
  for (int i = 1; i <= 7; ++i) contraction[i - 1] = detail::interior_product(i, sf);
  InducedMetric out{PolyMatrix(7, 7), ExactScalar::zero(), 1, {}, {}};
  ExactScalar six(6);
  for (int i = 1; i <= 7; ++i)
    for (int j = i; j <= 7; ++j) {
      ExactScalar c = detail::top_coefficient(
          super_mul(super_mul(contraction[i - 1], contraction[j - 1]), sf));
      c = c.div_exact(six);
      out.b_matrix.at(i - 1, j - 1) = c;
      out.b_matrix.at(j - 1, i - 1) = c;
    }
  out.orientation = detail::numeric_definiteness(out.b_matrix);
  if (out.orientation == 0) throw std::domain_error("not a positive 3-form");
  out.det_b = out.b_matrix.det();
  out.volume_scale = detail::monomial_nth_root(out.det_b, 9);
  if (out.volume_scale) {
    const ExactScalar& rho = *out.volume_scale;
    out.metric = out.b_matrix.map(
        [&rho](const ExactScalar& s) { return s.div_exact(rho); });
  }
  return out;
}

inline bool is_closed(const NilpotentLieAlgebra& alg, const ThreeForm& f) {
  return liealg::ce_differential(alg, f.as_superform()).terms().empty();
}

inline PolyMatrix intrinsic_endomorphism(const NilpotentLieAlgebra& alg,
                                         const InvariantMetric& g,
                                         const RealSpinor& phi) {
  ExactScalar norm = clifford::real_inner(phi, phi);
  if (!(norm == ExactScalar(2)))
    throw std::domain_error("spinor is not unit length");
  auto omega = liealg::spin_connection(liealg::koszul_christoffel(alg, g));
  PolyMatrix frame = clifford::spinor_frame(phi);
  PolyMatrix s(7, 7);
  for (int i = 1; i <= 7; ++i) {
    RealSpinor w;
    for (const auto& term : omega[i - 1]) {
      RealSpinor part =
          clifford::clifford_mul(term.j, clifford::clifford_mul(term.k, phi));
      for (int r = 0; r < 8; ++r) w.f[r] = w.f[r] + term.coeff * part.f[r];
    }
    std::array<ExactScalar, 8> x;
    for (int m = 0; m < 8; ++m) {
      ExactScalar acc;
      for (int r = 0; r < 8; ++r) acc = acc + frame.at(r, m) * w.f[r];
      x[m] = acc.div_exact(ExactScalar(2));
    }
    if (!x[0].is_zero())
      throw std::logic_error("spinor derivative leaves the moving frame");
    for (int j = 1; j <= 7; ++j) s.at(j - 1, i - 1) = x[j];
  }
  return s;
}

// derivative action of an endomorphism on a three-form; the intrinsic
// endomorphism of both closed cases annihilates the inducing form
inline ThreeForm endomorphism_action(const PolyMatrix& s, const ThreeForm& f) {
  ThreeForm out;
  for (int i = 1; i <= 7; ++i)
    for (int j = i + 1; j <= 7; ++j)
      for (int k = j + 1; k <= 7; ++k) {
        ExactScalar acc;
        for (int m = 1; m <= 7; ++m) {
          acc = acc + s.at(m - 1, i - 1) * f.at(m, j, k) +
                s.at(m - 1, j - 1) * f.at(i, m, k) +
                s.at(m - 1, k - 1) * f.at(i, j, m);
        }
        out.set(i, j, k, acc);
      }
  return out;
}

enum class GramScale { metric, volume_weighted };

struct NormalizedMetric {
  PolyMatrix automorphism;
  PolyMatrix transformed;
  // difference g33'*g66' - g22'*g77'; its exact vanishing is the collapse
  // of the two off-block scales into a single one
  ExactScalar collapse_difference;
  // (a^2)^9 for the volume-weighted path, (a^2) itself for metric input
  ExactScalar scale_witness;
  std::optional<ExactScalar> a_squared;
  double a_squared_numeric = 0.0;
};

// reduces a first-family Gram matrix to the diagonal normal form with a
// single scale on the last two directions: first the two displayed
// orthogonality automorphisms, then the scale extraction through the
// automorphism-invariant ratio g66/(g11 g22)
inline NormalizedMetric normalize_metric_h1(const PolyMatrix& gram,
                                            GramScale scale) {
  if (gram.rows() != 7 || gram.cols() != 7)
    throw std::invalid_argument("7x7 Gram matrix expected");
  for (int r = 0; r < 7; ++r)
    for (int c = r + 1; c < 7; ++c)
      if (!(gram.at(r, c) == gram.at(c, r)))
        throw std::invalid_argument("symmetric Gram matrix expected");
  if (detail::numeric_definiteness(gram) != 1)
    throw std::domain_error("positive-definite Gram matrix expected");

  auto g = [&gram](int i, int j) { return gram.at(i - 1, j - 1); };

  // first map: E4 picks up the unique central combination making it
  // orthogonal to E6 and E7; all other generators are fixed
  ExactScalar den67 = g(6, 6) * g(7, 7) - g(6, 7) * g(6, 7);
  PolyMatrix alpha = PolyMatrix::identity(7);
  alpha.at(5, 3) = -(g(4, 6) * g(7, 7) - g(4, 7) * g(6, 7)).div_exact(den67);
  alpha.at(6, 3) = -(g(4, 7) * g(6, 6) - g(4, 6) * g(6, 7)).div_exact(den67);
  PolyMatrix ga = alpha.transpose() * gram * alpha;

  // second map: the remaining non-central generators shed their component
  // along the corrected E4
  PolyMatrix beta = PolyMatrix::identity(7);
  for (int i : {1, 2, 3, 5})
    beta.at(3, i - 1) = -ga.at(i - 1, 3).div_exact(ga.at(3, 3));
  PolyMatrix gb = beta.transpose() * ga * beta;
  for (int i = 1; i <= 7; ++i) {
    if (i == 4) continue;
    if (!gb.at(i - 1, 3).is_zero() || !gb.at(3, i - 1).is_zero())
      throw std::logic_error("orthogonality reduction left a residual");
  }

  NormalizedMetric out{alpha * beta, gb, ExactScalar::zero(),
                       ExactScalar::zero(), {}, 0.0};
  auto h = [&gb](int i, int j) { return gb.at(i - 1, j - 1); };
  for (int r = 1; r <= 7; ++r)
    for (int c = r + 1; c <= 7; ++c)
      if (!h(r, c).is_zero())
        throw std::domain_error("not in the metric family");
  out.collapse_difference = h(3, 3) * h(6, 6) - h(2, 2) * h(7, 7);
  if (!out.collapse_difference.is_zero())
    throw std::domain_error("not in the metric family");

  Assignment at = liealg::generic_sample_point();
  if (scale == GramScale::metric) {
    for (int i : {2, 3, 4, 5})
      if (!(h(i, i) == h(1, 1)))
        throw std::domain_error("not in the metric family");
    out.scale_witness = h(6, 6).div_exact(h(1, 1));
    out.a_squared = out.scale_witness;
    out.a_squared_numeric = out.scale_witness.eval(at).real();
    return out;
  }
  ExactScalar ratio = h(6, 6).div_exact(h(1, 1) * h(2, 2));
  ExactScalar ninth = gb.det();
  for (int k = 0; k < 9; ++k) ninth = ninth * ratio;
  out.scale_witness = ninth;
  out.a_squared = detail::monomial_nth_root(ninth, 9);
  out.a_squared_numeric = std::pow(ninth.eval(at).real(), 1.0 / 9.0);
  if (out.a_squared) {
    double exact = out.a_squared->eval(at).real();
    if (std::abs(exact - out.a_squared_numeric) >
        1e-7 * (1 + std::abs(exact)))
      throw std::logic_error("scale extraction mismatch");
    out.a_squared_numeric = exact;
  }
  return out;
}

inline NormalizedMetric normalize_metric_h1(const InducedMetric& m) {
  if (m.metric) return normalize_metric_h1(*m.metric, GramScale::metric);
  return normalize_metric_h1(m.b_matrix, GramScale::volume_weighted);
}

}  // namespace nucert::g2
