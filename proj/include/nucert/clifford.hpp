#pragma once

// The Clifford algebra Cl(7) acting on its 8-dimensional complex spinor
// module, the real structure j, and the induced real form.  Two independent
// descriptions of the generators are kept: complex 8x8 matrices in the
// u-basis built from a triple Kronecker product, and real 8x8 matrices in
// the f-basis transcribed from their expansions in the elementary rotations
// f^{ij}.  Cross-validating the two guards against transcription slips.

#include <array>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nucert/exactnum.hpp"
#include "nucert/linalg.hpp"

namespace nucert::clifford {

using exactnum::ExactScalar;
using exactnum::GaussRat;
using exactnum::Rat;
using linalg::PolyMatrix;

struct CliffordVector {
  std::array<ExactScalar, 7> e{};
};

struct ComplexSpinor {
  std::array<ExactScalar, 8> u{};
};

struct RealSpinor {
  std::array<ExactScalar, 8> f{};
};

namespace detail {

inline PolyMatrix kron(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r.at(i * b.rows() + k, j * b.cols() + l) = a.at(i, j) * b.at(k, l);
  return r;
}

inline PolyMatrix pauli_like(int which) {
  PolyMatrix m(2, 2);
  switch (which) {
    case 0:  // identity
      m.at(0, 0) = ExactScalar::one();
      m.at(1, 1) = ExactScalar::one();
      break;
    case 1:  // off-diagonal i
      m.at(0, 1) = ExactScalar::i();
      m.at(1, 0) = ExactScalar::i();
      break;
    case 2:  // rotation by 90 degrees
      m.at(0, 1) = -ExactScalar::one();
      m.at(1, 0) = ExactScalar::one();
      break;
    case 3:  // diag(-1, 1)
      m.at(0, 0) = -ExactScalar::one();
      m.at(1, 1) = ExactScalar::one();
      break;
    default:
      throw std::out_of_range("pauli_like index");
  }
  return m;
}

}  // namespace detail

/// Generator e_i on the complex spinor module, u-basis coordinates.
inline PolyMatrix clifford_matrix(int i) {
  using detail::kron;
  using detail::pauli_like;
  PolyMatrix id2 = pauli_like(0), g1 = pauli_like(1), g2 = pauli_like(2),
             tau = pauli_like(3);
  switch (i) {
    case 1: return kron(id2, kron(id2, g1));
    case 2: return kron(id2, kron(id2, g2));
    case 3: return kron(id2, kron(g1, tau));
    case 4: return kron(id2, kron(g2, tau));
    case 5: return kron(g1, kron(tau, tau));
    case 6: return kron(g2, kron(tau, tau));
    case 7: return kron(tau, kron(tau, tau)).scaled(ExactScalar::i());
    default: throw std::out_of_range("clifford generator index");
  }
}

/// Generator e_i acting on the real form, f-basis coordinates.  Stored as an
/// independent table: each generator is a signed sum of f^{ij}, the rotation
/// sending f_i to f_j and f_j to -f_i.
inline PolyMatrix clifford_action_f(int i) {
  struct Term {
    int from, to, sign;
  };
  static const std::array<std::vector<Term>, 7> table = {{
      {{1, 6, +1}, {2, 5, +1}, {3, 8, +1}, {4, 7, +1}},
      {{1, 2, +1}, {3, 4, +1}, {5, 6, +1}, {7, 8, +1}},
      {{1, 7, -1}, {2, 8, +1}, {3, 5, -1}, {4, 6, +1}},
      {{1, 3, -1}, {2, 4, +1}, {5, 7, -1}, {6, 8, +1}},
      {{1, 8, -1}, {2, 7, -1}, {3, 6, +1}, {4, 5, +1}},
      {{1, 4, +1}, {2, 3, +1}, {5, 8, -1}, {6, 7, -1}},
      {{1, 5, -1}, {2, 6, +1}, {3, 7, +1}, {4, 8, -1}},
  }};
  if (i < 1 || i > 7) throw std::out_of_range("clifford generator index");
  PolyMatrix m(8, 8);
  for (const Term& t : table[i - 1]) {
    m.at(t.to - 1, t.from - 1) = ExactScalar(t.sign);
    m.at(t.from - 1, t.to - 1) = ExactScalar(-t.sign);
  }
  return m;
}

/// Columns are sqrt(2) f_1, ..., sqrt(2) f_8 in u-coordinates, so that
/// Q^dagger Q = 2 id with Gaussian-rational entries only.
inline PolyMatrix f_basis_in_u_times_sqrt2() {
  struct Entry {
    int row;
    GaussRat coeff;
  };
  GaussRat one(1), minus(-1), im(Rat(0), Rat(1)), mim(Rat(0), Rat(-1));
  static const std::array<std::array<Entry, 2>, 8> cols = {{
      {{{1, one}, {8, minus}}},
      {{{2, one}, {7, one}}},
      {{{3, one}, {6, minus}}},
      {{{4, one}, {5, one}}},
      {{{1, im}, {8, im}}},
      {{{2, im}, {7, mim}}},
      {{{3, im}, {6, im}}},
      {{{4, im}, {5, mim}}},
  }};
  PolyMatrix q(8, 8);
  for (int c = 0; c < 8; ++c)
    for (const Entry& e : cols[c])
      q.at(e.row - 1, c) = ExactScalar::from_coeff(e.coeff);
  return q;
}

/// The antilinear real structure on the complex module.
inline ComplexSpinor real_structure(const ComplexSpinor& s) {
  auto cj = [&](int k) { return s.u[k - 1].conj(); };
  ComplexSpinor r;
  r.u[0] = -cj(8);
  r.u[1] = cj(7);
  r.u[2] = -cj(6);
  r.u[3] = cj(5);
  r.u[4] = cj(4);
  r.u[5] = -cj(3);
  r.u[6] = cj(2);
  r.u[7] = -cj(1);
  return r;
}

inline RealSpinor clifford_mul(int i, const RealSpinor& s) {
  PolyMatrix m = clifford_action_f(i);
  RealSpinor r;
  for (int row = 0; row < 8; ++row)
    for (int col = 0; col < 8; ++col)
      r.f[row] += m.at(row, col) * s.f[col];
  return r;
}

inline RealSpinor clifford_mul(const CliffordVector& v, const RealSpinor& s) {
  RealSpinor r;
  for (int i = 1; i <= 7; ++i) {
    if (v.e[i - 1].is_zero()) continue;
    RealSpinor part = clifford_mul(i, s);
    for (int k = 0; k < 8; ++k) r.f[k] += v.e[i - 1] * part.f[k];
  }
  return r;
}

inline ExactScalar hermitian_inner(const ComplexSpinor& x, const ComplexSpinor& y) {
  ExactScalar acc;
  for (int k = 0; k < 8; ++k) acc += x.u[k].conj() * y.u[k];
  return acc;
}

inline ExactScalar real_inner(const RealSpinor& x, const RealSpinor& y) {
  ExactScalar acc;
  for (int k = 0; k < 8; ++k) acc += x.f[k] * y.f[k];
  return acc;
}

/// The compatible spinor in raw integer coordinates, f_2 + f_4.  Its squared
/// norm is 2; frame maps built from it divide by that factor instead of
/// introducing square roots.
inline RealSpinor compatible_spinor_raw() {
  RealSpinor s;
  s.f[1] = ExactScalar::one();
  s.f[3] = ExactScalar::one();
  return s;
}

/// Columns phi, e_1 phi, ..., e_7 phi of a spinor with squared norm 2.
/// For the compatible spinor these columns are orthogonal with F^T F = 2 id.
inline PolyMatrix spinor_frame(const RealSpinor& phi) {
  PolyMatrix frame(8, 8);
  for (int r = 0; r < 8; ++r) frame.at(r, 0) = phi.f[r];
  for (int i = 1; i <= 7; ++i) {
    RealSpinor col = clifford_mul(i, phi);
    for (int r = 0; r < 8; ++r) frame.at(r, i) = col.f[r];
  }
  return frame;
}

/// Conjugate an endomorphism of the real module into the frame of a norm-2
/// spinor: F^T M F / 2.
inline PolyMatrix to_spinor_frame(const PolyMatrix& m, const PolyMatrix& frame) {
  PolyMatrix half = (frame.transpose() * m * frame);
  return half.map([](const ExactScalar& s) {
    return s.div_exact(ExactScalar(2));
  });
}

struct CliffordRelationReport {
  int pairs_checked = 0;
  std::vector<std::pair<int, int>> u_basis_failures;
  std::vector<std::pair<int, int>> f_basis_failures;
  bool passed() const {
    return u_basis_failures.empty() && f_basis_failures.empty();
  }
};

/// Checks e_i e_j + e_j e_i = -2 delta_ij on all 49 ordered pairs, in both
/// stored descriptions of the generators.
inline CliffordRelationReport verify_clifford_relations(
    const std::array<PolyMatrix, 7>& u_mats,
    const std::array<PolyMatrix, 7>& f_mats) {
  CliffordRelationReport rep;
  for (int i = 1; i <= 7; ++i) {
    for (int j = 1; j <= 7; ++j) {
      ++rep.pairs_checked;
      PolyMatrix expect(8, 8);
      if (i == j) expect = PolyMatrix::identity(8).scaled(ExactScalar(-2));
      PolyMatrix au = u_mats[i - 1] * u_mats[j - 1] + u_mats[j - 1] * u_mats[i - 1];
      if (!(au == expect)) rep.u_basis_failures.emplace_back(i, j);
      PolyMatrix af = f_mats[i - 1] * f_mats[j - 1] + f_mats[j - 1] * f_mats[i - 1];
      if (!(af == expect)) rep.f_basis_failures.emplace_back(i, j);
    }
  }
  return rep;
}

inline CliffordRelationReport verify_clifford_relations() {
  std::array<PolyMatrix, 7> u_mats = {
      clifford_matrix(1), clifford_matrix(2), clifford_matrix(3),
      clifford_matrix(4), clifford_matrix(5), clifford_matrix(6),
      clifford_matrix(7)};
  std::array<PolyMatrix, 7> f_mats = {
      clifford_action_f(1), clifford_action_f(2), clifford_action_f(3),
      clifford_action_f(4), clifford_action_f(5), clifford_action_f(6),
      clifford_action_f(7)};
  return verify_clifford_relations(u_mats, f_mats);
}

}  // namespace nucert::clifford
