#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nucert/certificate.hpp"
#include "nucert/clifford.hpp"
#include "nucert/exactnum.hpp"
#include "nucert/kirillov.hpp"
#include "nucert/liealg.hpp"
#include "nucert/linalg.hpp"

namespace nucert::dirac {

using cert::Certificate;
using exactnum::Assignment;
using exactnum::ExactScalar;
using exactnum::Var;
using kirillov::ModeKind;
using kirillov::ModeSpec;
using liealg::InvariantMetric;
using liealg::NilpotentLieAlgebra;
using linalg::PolyMatrix;

/// The operator restricted to the translation-invariant sector, written in
/// the frame phi, e_1 phi, ..., e_7 phi of a unit spinor.
struct InvariantDiracMatrix {
  PolyMatrix m;
};

/// The operator on a character mode: the Clifford action of the mode
/// frequencies plus the invariant summand.
struct CharacterModeMatrix {
  PolyMatrix m;
  PolyMatrix frequency;
  PolyMatrix invariant;
  std::array<ExactScalar, 8> beta{};
  std::string family;
};

/// The operator on an induced infinite-dimensional mode, written against the
/// Hermite ladder of the transverse direction.  Row k of the action reads
/// b psi_{k-1} + a psi_k + (k+1) c psi_{k+1}.
struct HermiteBlockOperator {
  PolyMatrix a;
  PolyMatrix b;
  PolyMatrix c;
  ExactScalar c_aux;
  std::array<ExactScalar, 8> beta{};
  std::string family;
};

/// The member of the second family whose invariant three-form is closed: the
/// first structure constant equals b + c.
inline NilpotentLieAlgebra closed_second_family() {
  ExactScalar b = ExactScalar::variable(Var::b);
  ExactScalar c = ExactScalar::variable(Var::c);
  NilpotentLieAlgebra alg("h2");
  alg.set_bracket(1, 2, 4, -(b + c));
  alg.set_bracket(1, 3, 5, -b);
  alg.set_bracket(2, 3, 6, -c);
  return alg;
}

namespace detail {

/// Clifford generators and the invariant operator summand, conjugated into
/// the frame of a fixed unit spinor.  action[0] is the identity.
struct SpinorCalculus {
  std::array<PolyMatrix, 8> action;
  PolyMatrix invariant;
};

inline SpinorCalculus spinor_calculus(const NilpotentLieAlgebra& alg,
                                      const InvariantMetric& g,
                                      const clifford::RealSpinor& phi) {
  if (clifford::real_inner(phi, phi) != ExactScalar(2))
    throw std::domain_error("spinor is not unit length");
  PolyMatrix frame = clifford::spinor_frame(phi);
  SpinorCalculus sc;
  sc.action[0] = PolyMatrix::identity(8);
  std::array<PolyMatrix, 8> raw;
  for (int i = 1; i <= 7; ++i) {
    raw[i] = clifford::clifford_action_f(i);
    sc.action[i] = clifford::to_spinor_frame(raw[i], frame);
  }
  auto omega = liealg::spin_connection(liealg::koszul_christoffel(alg, g));
  PolyMatrix d0(8, 8);
  for (int i = 1; i <= 7; ++i)
    for (const auto& term : omega[i - 1])
      d0 = d0 + (raw[i] * raw[term.j] * raw[term.k]).scaled(term.coeff);
  sc.invariant = clifford::to_spinor_frame(d0, frame);
  return sc;
}

/// Degree and coefficient of the highest power of pi.
inline std::optional<std::pair<int, ExactScalar>> pi_leading(
    const ExactScalar& s) {
  if (s.is_zero()) return std::nullopt;
  int d = s.degree_in(Var::pi);
  return std::make_pair(d, s.coeff_of(Var::pi, d));
}

/// Multiplies by even powers of the variables until no exponent is negative.
inline ExactScalar clear_denominators(const ExactScalar& s) {
  ExactScalar out = s;
  for (int k = 0; k < exactnum::kNumVars; ++k) {
    Var v = static_cast<Var>(k);
    int m = out.min_degree_in(v);
    if (m < 0) out = out * ExactScalar::variable(v, ((-m) + 1) / 2 * 2);
  }
  return out;
}

inline bool is_parameter(Var v) {
  return v == Var::pi || v == Var::a || v == Var::b || v == Var::c ||
         v == Var::c_aux;
}

/// True when some monomial of s involves, beyond the nonvanishing parameters,
/// only variables from the allowed list.
inline bool has_term_supported_within(const ExactScalar& s,
                                      const std::vector<Var>& allowed) {
  for (const auto& [e, coeff] : s.terms()) {
    bool ok = true;
    for (int k = 0; k < exactnum::kNumVars && ok; ++k) {
      if (e[k] == 0) continue;
      Var v = static_cast<Var>(k);
      if (is_parameter(v)) continue;
      if (std::find(allowed.begin(), allowed.end(), v) == allowed.end())
        ok = false;
    }
    if (ok) return true;
  }
  return false;
}

/// Positive combination of even monomials, strictly positive as soon as any
/// single watched variable is nonzero (parameters are always nonzero).
inline bool positive_definite_any(const ExactScalar& s,
                                  const std::vector<Var>& watched) {
  auto pc = exactnum::positivity_certificate(s);
  if (!pc.all_coefficients_positive || !pc.all_exponents_even) return false;
  if (has_term_supported_within(s, {})) return true;
  if (watched.empty()) return false;
  for (Var v : watched)
    if (!has_term_supported_within(s, {v})) return false;
  return true;
}

/// Positive combination of even monomials, strictly positive when all the
/// watched variables are nonzero simultaneously.
inline bool positive_definite_all(const ExactScalar& s,
                                  const std::vector<Var>& watched) {
  auto pc = exactnum::positivity_certificate(s);
  if (!pc.all_coefficients_positive || !pc.all_exponents_even) return false;
  return has_term_supported_within(s, watched);
}

}  // namespace detail

/// The invariant-sector operator in the frame of the given unit spinor.
inline InvariantDiracMatrix invariant_dirac_matrix(
    const NilpotentLieAlgebra& alg, const InvariantMetric& g,
    const clifford::RealSpinor& phi) {
  return InvariantDiracMatrix{detail::spinor_calculus(alg, g, phi).invariant};
}

/// A character mode whose frequencies are free symbols, covering every
/// character mode of the family at once.
inline ModeSpec symbolic_character_mode(const NilpotentLieAlgebra& alg) {
  ModeSpec m;
  m.kind = ModeKind::character;
  if (alg.name() == "h1") {
    for (int k = 1; k <= 5; ++k) m.beta[k] = exactnum::beta(k);
  } else if (alg.name() == "h2") {
    for (int k : {1, 2, 3, 7}) m.beta[k] = exactnum::beta(k);
  } else {
    throw std::invalid_argument("unknown family");
  }
  return m;
}

/// An induced mode whose frequencies are free symbols; the alpha symbols
/// stand for orthonormal-frame components with lattice scalings absorbed.
inline ModeSpec symbolic_infinite_mode(const NilpotentLieAlgebra& alg) {
  ModeSpec m;
  m.kind = ModeKind::infinite;
  if (alg.name() == "h1") {
    for (int k = 2; k <= 7; ++k) m.beta[k] = exactnum::beta(k);
  } else if (alg.name() == "h2") {
    for (int k : {1, 4, 5, 6, 7}) m.beta[k] = exactnum::beta(k);
  } else {
    throw std::invalid_argument("unknown family");
  }
  return m;
}

inline CharacterModeMatrix character_mode_matrix(const NilpotentLieAlgebra& alg,
                                                 const InvariantMetric& g,
                                                 const ModeSpec& mode) {
  if (mode.kind != ModeKind::character)
    throw std::invalid_argument("character matrix requires a character mode");
  detail::SpinorCalculus sc =
      detail::spinor_calculus(alg, g, clifford::compatible_spinor_raw());
  CharacterModeMatrix out;
  out.family = alg.name();
  out.beta = mode.beta;
  out.frequency = PolyMatrix(8, 8);
  for (int k = 1; k <= 7; ++k)
    if (!mode.beta[k].is_zero())
      out.frequency = out.frequency + sc.action[k].scaled(mode.beta[k]);
  out.invariant = sc.invariant;
  out.m = out.frequency + out.invariant;
  return out;
}

/// Certificates that the operator on the given character mode is injective,
/// valid at rational frequencies and rational nonzero parameters.  Throws on
/// the invariant mode, whose kernel is the harmonic space itself.
inline std::vector<Certificate> character_kernel_trivial(
    const CharacterModeMatrix& cm) {
  bool invariant_mode = true;
  for (int k = 1; k <= 7; ++k)
    if (!cm.beta[k].is_zero()) invariant_mode = false;
  if (invariant_mode)
    throw std::domain_error("invariant sector, kernel nontrivial by design");

  std::vector<Certificate> out;
  std::string base = cm.family + ".dirac.character.";
  if (cm.family == "h1") {
    ExactScalar mu2;
    for (int k = 1; k <= 7; ++k) mu2 += exactnum::norm_sq(cm.beta[k]);
    bool sq = cm.frequency * cm.frequency == PolyMatrix::scalar(8, mu2);
    out.push_back(cert::make(
        "frequency-square",
        "the frequency part squares to mu^2, the sum of squared frequency "
        "magnitudes",
        base + "frequency_square", sq, mu2.to_string()));

    // A kernel vector satisfies (mu^2 + frequency * invariant) psi = 0, so
    // nonvanishing of that determinant rules out a kernel.
    PolyMatrix combined =
        PolyMatrix::scalar(8, mu2) + cm.frequency * cm.invariant;
    ExactScalar d = combined.det();
    auto lead = detail::pi_leading(d);
    std::vector<Var> watched;
    for (int k = 1; k <= 5; ++k)
      if (!cm.beta[k].is_zero()) watched.push_back(exactnum::alpha_var(k));
    bool ok = lead.has_value() && lead->first == 16 &&
              detail::positive_definite_any(
                  detail::clear_denominators(lead->second), watched);
    out.push_back(cert::make(
        "combined-determinant",
        "det(mu^2 + frequency * invariant) has degree 16 in pi with a "
        "positive-definite leading form; pi being transcendental, the "
        "determinant cannot vanish at rational data, so the mode carries no "
        "kernel",
        base + "combined_determinant", ok,
        lead ? "pi-degree " + std::to_string(lead->first) : "determinant 0"));
  } else {
    ExactScalar d = cm.m.det();
    out.push_back(cert::make("determinant-real",
                             "the mode determinant is a real polynomial",
                             base + "determinant_real", d == d.conj()));
    auto lead = detail::pi_leading(d);
    std::vector<Var> watched;
    for (int k : {1, 2, 3, 7})
      if (!cm.beta[k].is_zero()) watched.push_back(exactnum::alpha_var(k));
    bool ok = lead.has_value() && lead->first == 8 &&
              detail::positive_definite_any(
                  detail::clear_denominators(lead->second), watched);
    out.push_back(cert::make(
        "combined-determinant",
        "the mode determinant has degree 8 in pi with a positive-definite "
        "leading form; pi being transcendental, it cannot vanish at rational "
        "data, so the mode carries no kernel",
        base + "combined_determinant", ok,
        lead ? "pi-degree " + std::to_string(lead->first) : "determinant 0"));
  }
  return out;
}

/// Hermite ladder blocks of the operator on an induced mode.  The transverse
/// direction and the projection coefficients are chosen by family: the first
/// family polarizes along the directions 2..7, the second along the isotropic
/// complement of the third direction when both in-plane frequencies are
/// nonzero, and along a greedy frame-adapted polarization otherwise.
inline HermiteBlockOperator hermite_blocks(
    const NilpotentLieAlgebra& alg, const InvariantMetric& g,
    const ModeSpec& mode, ExactScalar c_aux = ExactScalar(1)) {
  if (mode.kind != ModeKind::infinite)
    throw std::invalid_argument("hermite blocks require an induced mode");
  if (c_aux.is_zero())
    throw std::domain_error("auxiliary scaling must be nonzero");
  detail::SpinorCalculus sc =
      detail::spinor_calculus(alg, g, clifford::compatible_spinor_raw());

  int x = 0;
  std::array<ExactScalar, 8> delta{};
  if (alg.name() == "h1") {
    x = 1;
    delta[1] = ExactScalar::one();
  } else if (alg.name() == "h2" && !mode.beta[5].is_zero() &&
             !mode.beta[6].is_zero()) {
    x = 3;
    delta[1] = -mode.beta[4].div_exact(mode.beta[6]);
    delta[2] = mode.beta[4].div_exact(mode.beta[5]);
    delta[3] = ExactScalar::one();
  } else {
    kirillov::LinearFunctional l;
    ExactScalar inv_two_pi_i =
        ExactScalar::from_coeff(
            exactnum::GaussRat(exactnum::Rat(0), exactnum::Rat(-1, 2))) *
        ExactScalar::pi_pow(-1);
    for (int k = 1; k <= 7; ++k) l.at(k) = mode.beta[k] * inv_two_pi_i;
    auto pol = kirillov::polarizing_subalgebra(alg, l);
    if (pol.dimension != 6)
      throw std::runtime_error("polarization has unexpected dimension");
    auto in_span = [&](int k) {
      std::vector<liealg::FrameVector> probe = pol.basis;
      probe.push_back(liealg::basis_vector(k));
      return kirillov::detail::span_rank(probe) == 6;
    };
    for (int k = 1; k <= 7 && x == 0; ++k)
      if (!in_span(k)) x = k;
    if (x == 0) throw std::runtime_error("no ladder direction found");
    for (int k = 1; k <= 7; ++k)
      if (k != x && !in_span(k))
        throw std::runtime_error("polarization is not adapted to the frame");
    delta[x] = ExactScalar::one();
  }

  std::array<ExactScalar, 8> gamma{};
  std::array<ExactScalar, 8> tau{};
  for (int k = 1; k <= 7; ++k) {
    gamma[k] = mode.beta[k] - delta[k] * mode.beta[x];
    if (k == x) continue;
    const liealg::FrameVector& br = alg.bracket_basis(x, k);
    for (int m = 1; m <= 7; ++m) tau[k] += br[m - 1] * mode.beta[m];
  }

  ExactScalar inv_w = ExactScalar::one().div_exact(c_aux);
  ExactScalar half = ExactScalar::rational(1, 2);
  HermiteBlockOperator op;
  op.family = alg.name();
  op.beta = mode.beta;
  op.c_aux = c_aux;
  op.a = sc.invariant;
  op.b = PolyMatrix(8, 8);
  op.c = PolyMatrix(8, 8);
  for (int k = 1; k <= 7; ++k) {
    if (!gamma[k].is_zero()) op.a = op.a + sc.action[k].scaled(gamma[k]);
    ExactScalar bk = -tau[k] * inv_w * half + delta[k] * c_aux * half;
    ExactScalar ck = -tau[k] * inv_w - delta[k] * c_aux;
    if (!bk.is_zero()) op.b = op.b + sc.action[k].scaled(bk);
    if (!ck.is_zero()) op.c = op.c + sc.action[k].scaled(ck);
  }
  return op;
}

/// Certificates that the induced-mode operator has no square-summable kernel,
/// valid at rational data.  With the symbolic auxiliary scaling the analysis
/// splits into the branch where the raising block is invertible and the
/// locus where its determinant vanishes; with a numeric scaling the locus is
/// empty at rational data and a transcendence certificate covers everything.
inline std::vector<Certificate> infinite_kernel_trivial(
    const HermiteBlockOperator& op) {
  std::vector<Certificate> out;
  std::string base = op.family + ".dirac.infinite.";

  bool pairing = op.c == op.b.dagger().scaled(ExactScalar(2));
  out.push_back(cert::make(
      "adjoint-pairing",
      "the raising block equals twice the adjoint of the lowering block",
      base + "adjoint_pairing", pairing));

  ExactScalar det_b = op.b.det();
  ExactScalar det_c = op.c.det();
  out.push_back(cert::make(
      "determinant-conjugacy",
      "the raising determinant equals 256 times the conjugate of the "
      "lowering determinant",
      base + "determinant_conjugacy",
      ExactScalar(256) * det_b.conj() == det_c));

  out.push_back(cert::make("block-a-hermitian",
                           "the diagonal block is self-adjoint",
                           base + "block_a_hermitian", op.a == op.a.dagger()));

  out.push_back(cert::make(
      "block-a-even-charpoly",
      "the characteristic polynomial of the diagonal block is even, so its "
      "spectrum is symmetric about zero",
      base + "block_a_even_charpoly", linalg::charpoly_is_even(op.a)));

  std::vector<Var> watched =
      op.family == "h1"
          ? std::vector<Var>{exactnum::alpha_var(6), exactnum::alpha_var(7)}
          : std::vector<Var>{exactnum::alpha_var(5), exactnum::alpha_var(6)};

  ExactScalar det_a = op.a.det();
  bool a_pos = detail::positive_definite_any(
      detail::clear_denominators(det_a), watched);
  out.push_back(cert::make(
      "block-a-determinant",
      "the diagonal determinant clears to a positive combination of even "
      "monomials, strictly positive on the mode's frequency range, so the "
      "diagonal block is injective",
      base + "block_a_determinant", a_pos));

  bool scaling_free = true;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      const ExactScalar& e = op.a.at(i, j);
      if (e.degree_in(Var::c_aux) != 0 || e.min_degree_in(Var::c_aux) != 0)
        scaling_free = false;
    }
  out.push_back(cert::make(
      "block-a-scaling-free",
      "the diagonal block does not involve the auxiliary scaling, so its "
      "injectivity persists on the locus where the raising block degenerates",
      base + "block_a_scaling_free", scaling_free));

  bool symbolic_w = op.c_aux == ExactScalar::variable(Var::c_aux);
  if (op.family == "h1" && symbolic_w) {
    ExactScalar s67 =
        exactnum::norm_sq(op.beta[6]) + exactnum::norm_sq(op.beta[7]);
    ExactScalar a2 = ExactScalar::variable(Var::a, 2);
    ExactScalar w4 = op.c_aux * op.c_aux * op.c_aux * op.c_aux;
    ExactScalar q = a2 * s67 - w4;
    ExactScalar expect = q * q * q * q;
    ExactScalar inv_w = ExactScalar::one().div_exact(op.c_aux);
    for (int j = 0; j < 8; ++j) expect = expect * inv_w;
    out.push_back(cert::make(
        "det-c-closed-form",
        "the raising determinant equals (a^2 (|beta_6|^2 + |beta_7|^2) - "
        "w^4)^4 / w^8 in the auxiliary scaling w",
        base + "det_c_closed_form", det_c == expect));

    // On the locus w^4 = a^2(|beta_6|^2 + |beta_7|^2) the raising block
    // degenerates; the minor below stays nonzero there, so the kernels of
    // the lowering and raising blocks intersect trivially and the recursion
    // admits no square-summable solution.
    PolyMatrix stacked = PolyMatrix::vstack(op.b, op.c);
    std::vector<int> rows = {0, 1, 4, 5, 8, 9, 12, 13};
    std::vector<int> cols = {0, 1, 2, 3, 4, 5, 6, 7};
    ExactScalar minor = stacked.submatrix(rows, cols).det();
    ExactScalar w8 = w4 * w4;
    ExactScalar reduced =
        exactnum::reduce_power(minor * w8, Var::c_aux, 4, a2 * s67);
    bool ok = detail::positive_definite_any(
                  detail::clear_denominators(reduced), watched) ||
              detail::positive_definite_any(
                  detail::clear_denominators(-reduced), watched);
    out.push_back(cert::make(
        "kernel-intersection",
        "an 8x8 minor of the stacked off-diagonal blocks, reduced modulo the "
        "degeneracy relation w^4 = a^2 (|beta_6|^2 + |beta_7|^2), is a "
        "sign-definite form, so no vector lies in both kernels",
        base + "kernel_intersection", ok, reduced.to_string()));
  } else {
    ExactScalar cleared = detail::clear_denominators(det_c);
    auto lead = detail::pi_leading(cleared);
    bool ok = lead.has_value() && lead->first > 0 &&
              detail::positive_definite_all(
                  detail::clear_denominators(lead->second), watched);
    out.push_back(cert::make(
        "det-c-transcendence",
        "the raising determinant, denominators cleared, has positive degree "
        "in pi with a positive-definite leading form; pi being "
        "transcendental it cannot vanish at rational data, so the raising "
        "block stays invertible and the recursion admits no square-summable "
        "solution",
        base + "det_c_transcendence", ok,
        lead ? "pi-degree " + std::to_string(lead->first) : "determinant 0"));
  }
  return out;
}

/// Spectrum of the 8K x 8K truncation in the normalized Hermite basis.  The
/// normalization is a diagonal conjugation, which commutes with truncation,
/// and makes the matrix Hermitian whenever c = 2 b^dagger; a residual guard
/// enforces that before solving.
inline std::vector<double> truncated_spectrum(const HermiteBlockOperator& op,
                                              int levels,
                                              const Assignment& at) {
  if (levels < 1) throw std::invalid_argument("levels must be positive");
  const int n = 8 * levels;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  auto put = [&](int br, int bc, const PolyMatrix& blk, double scale) {
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c)
        m(8 * br + r, 8 * bc + c) = scale * blk.at(r, c).eval(at);
  };
  for (int k = 0; k < levels; ++k) put(k, k, op.a, 1.0);
  for (int k = 0; k + 1 < levels; ++k) {
    put(k + 1, k, op.b, std::sqrt(2.0 * (k + 1)));
    put(k, k + 1, op.c, std::sqrt((k + 1) / 2.0));
  }
  double residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (residual > 1e-9)
    throw std::runtime_error("truncated operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = solver.eigenvalues()(k);
  std::sort(out.begin(), out.end());
  return out;
}

/// Spectrum of the operator on a character mode at a numeric assignment.
inline std::vector<double> truncated_spectrum(const CharacterModeMatrix& cm,
                                              const Assignment& at) {
  Eigen::MatrixXcd m(8, 8);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 8; ++c) m(r, c) = cm.m.at(r, c).eval(at);
  double residual = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (residual > 1e-9)
    throw std::runtime_error("mode operator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  std::vector<double> out(8);
  for (int k = 0; k < 8; ++k) out[k] = solver.eigenvalues()(k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace nucert::dirac
