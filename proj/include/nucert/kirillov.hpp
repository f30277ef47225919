#pragma once

// Coadjoint orbits of the two nilpotent groups: radicals, polarizing
// subalgebras, orbit-representative reduction, and the enumeration of
// lattice modes entering the L2 decomposition of spinor fields.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nucert/exactnum.hpp"
#include "nucert/liealg.hpp"
#include "nucert/linalg.hpp"

namespace nucert::kirillov {

using exactnum::ExactScalar;
using exactnum::GaussRat;
using exactnum::Rat;
using exactnum::Var;
using liealg::FrameVector;
using liealg::LatticeSpec;
using liealg::NilpotentLieAlgebra;
using linalg::PolyMatrix;

struct LinearFunctional {
  std::array<ExactScalar, 7> alpha{};

  static LinearFunctional dual_basis(int i) {
    LinearFunctional l;
    l.at(i) = ExactScalar::one();
    return l;
  }

  static LinearFunctional symbolic() {
    LinearFunctional l;
    for (int k = 1; k <= 7; ++k)
      l.at(k) = ExactScalar::variable(exactnum::alpha_var(k));
    return l;
  }

  ExactScalar& at(int i) {
    if (i < 1 || i > 7) throw std::out_of_range("dual index out of range");
    return alpha[i - 1];
  }
  const ExactScalar& at(int i) const {
    if (i < 1 || i > 7) throw std::out_of_range("dual index out of range");
    return alpha[i - 1];
  }

  ExactScalar pair(const FrameVector& x) const {
    ExactScalar acc;
    for (int k = 0; k < 7; ++k) acc = acc + alpha[k] * x[k];
    return acc;
  }
};

// skew bilinear form (i, j) -> l([e_i, e_j])
inline PolyMatrix skew_form(const NilpotentLieAlgebra& alg,
                            const LinearFunctional& l) {
  PolyMatrix w(7, 7);
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j)
      w.at(i - 1, j - 1) = l.pair(alg.bracket_basis(i, j));
  return w;
}

inline std::vector<FrameVector> radical(const NilpotentLieAlgebra& alg,
                                        const LinearFunctional& l) {
  std::vector<FrameVector> out;
  for (const auto& v : linalg::kernel_basis(skew_form(alg, l))) {
    FrameVector f;
    for (int k = 0; k < 7; ++k) f[k] = v[k];
    out.push_back(f);
  }
  return out;
}

enum class OrbitKind { point, plane };

struct CoadjointOrbitInfo {
  OrbitKind kind;
  std::vector<std::array<ExactScalar, 7>> spanning;
  std::vector<FrameVector> radical;
  int orbit_dimension = 0;
};

// l' = Ad*_{exp(y)} l = l - l([y, .]), exact for two-step algebras
inline LinearFunctional coadjoint_displace(const NilpotentLieAlgebra& alg,
                                           const LinearFunctional& l,
                                           const FrameVector& y) {
  LinearFunctional out = l;
  for (int j = 1; j <= 7; ++j)
    out.at(j) = out.at(j) - l.pair(alg.bracket(y, liealg::basis_vector(j)));
  return out;
}

inline CoadjointOrbitInfo coadjoint_orbit(const NilpotentLieAlgebra& alg,
                                          const LinearFunctional& l) {
  PolyMatrix w = skew_form(alg, l);
  CoadjointOrbitInfo info;
  info.radical = radical(alg, l);
  info.orbit_dimension = 7 - static_cast<int>(info.radical.size());
  if (info.orbit_dimension % 2 != 0)
    throw std::logic_error("coadjoint orbit dimension must be even");
  info.kind = info.orbit_dimension == 0 ? OrbitKind::point : OrbitKind::plane;
  for (int i : linalg::pivot_minor(w).rows) {
    std::array<ExactScalar, 7> row;
    for (int j = 0; j < 7; ++j) row[j] = w.at(i, j);
    info.spanning.push_back(row);
  }
  return info;
}

namespace detail {

inline PolyMatrix rows_matrix(const std::vector<FrameVector>& vectors) {
  PolyMatrix m(static_cast<int>(vectors.size()), 7);
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < 7; ++c) m.at(r, c) = vectors[r][c];
  return m;
}

inline int span_rank(const std::vector<FrameVector>& vectors) {
  return linalg::rank(rows_matrix(vectors));
}

inline bool is_isotropic(const PolyMatrix& w,
                         const std::vector<FrameVector>& vectors) {
  PolyMatrix v = rows_matrix(vectors);
  PolyMatrix pairing = v * w * v.transpose();
  for (int r = 0; r < pairing.rows(); ++r)
    for (int c = 0; c < pairing.cols(); ++c)
      if (!pairing.at(r, c).is_zero()) return false;
  return true;
}

inline bool is_subalgebra(const NilpotentLieAlgebra& alg,
                          const std::vector<FrameVector>& vectors) {
  int base = span_rank(vectors);
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      FrameVector b = alg.bracket(vectors[i], vectors[j]);
      if (liealg::is_zero_vector(b)) continue;
      std::vector<FrameVector> extended = vectors;
      extended.push_back(b);
      if (span_rank(extended) != base) return false;
    }
  return true;
}

}  // namespace detail

inline bool is_polarizing(const NilpotentLieAlgebra& alg,
                          const LinearFunctional& l,
                          const std::vector<FrameVector>& basis) {
  PolyMatrix w = skew_form(alg, l);
  int dim = detail::span_rank(basis);
  if (dim != static_cast<int>(basis.size())) return false;
  int orbit = linalg::rank(w);
  if (dim != 7 - orbit / 2) return false;
  return detail::is_isotropic(w, basis) && detail::is_subalgebra(alg, basis);
}

struct PolarizingSubalgebra {
  std::vector<FrameVector> basis;
  std::vector<int> added_generators;
  int dimension = 0;
};

// extends the radical by frame vectors, in index order, keeping the span
// isotropic and bracket-closed, until it is maximal isotropic
inline PolarizingSubalgebra polarizing_subalgebra(
    const NilpotentLieAlgebra& alg, const LinearFunctional& l) {
  PolyMatrix w = skew_form(alg, l);
  PolarizingSubalgebra out;
  out.basis = radical(alg, l);
  int dim = static_cast<int>(out.basis.size());
  int target = 7 - (7 - dim) / 2;
  for (int i = 1; i <= 7 && dim < target; ++i) {
    std::vector<FrameVector> candidate = out.basis;
    candidate.push_back(liealg::basis_vector(i));
    if (detail::span_rank(candidate) != dim + 1) continue;
    if (!detail::is_isotropic(w, candidate)) continue;
    if (!detail::is_subalgebra(alg, candidate)) continue;
    out.basis = candidate;
    out.added_generators.push_back(i);
    ++dim;
  }
  if (dim != target)
    throw std::runtime_error("polarizing extension failed to reach maximal");
  out.dimension = dim;
  return out;
}

struct ReducedRepresentative {
  LinearFunctional functional;
  FrameVector shift;
};

// moves l to the representative of its coadjoint orbit with the displayed
// vanishing pattern, exhibiting the group parameter that realizes it
inline ReducedRepresentative reduce_orbit_representative(
    const NilpotentLieAlgebra& alg, const LinearFunctional& l) {
  ExactScalar a = ExactScalar::variable(Var::a);
  ExactScalar b = ExactScalar::variable(Var::b);
  ExactScalar c = ExactScalar::variable(Var::c);
  FrameVector y{};
  std::vector<int> zeroed;
  if (alg.name() == "h1") {
    if (!l.at(6).is_zero()) {
      y[0] = -l.at(2).div_exact(a * l.at(6));
      zeroed = {2};
    } else if (!l.at(7).is_zero()) {
      y[0] = -l.at(3).div_exact(a * l.at(7));
      zeroed = {3};
    }
  } else if (alg.name() == "h2") {
    if (!l.at(6).is_zero()) {
      y[1] = -l.at(3).div_exact(c * l.at(6));
      y[2] = l.at(2).div_exact(c * l.at(6));
      zeroed = {2, 3};
    } else if (!l.at(5).is_zero()) {
      y[0] = -l.at(3).div_exact(b * l.at(5));
      y[2] = l.at(1).div_exact(b * l.at(5));
      zeroed = {1, 3};
    } else if (!l.at(4).is_zero()) {
      y[0] = -l.at(2).div_exact(a * l.at(4));
      y[1] = l.at(1).div_exact(a * l.at(4));
      zeroed = {1, 2};
    }
  }
  ReducedRepresentative out{coadjoint_displace(alg, l, y), y};
  for (int k : zeroed)
    if (!out.functional.at(k).is_zero())
      throw std::logic_error("representative reduction left a residual");
  return out;
}

enum class ModeKind { character, infinite };

struct ModeSpec {
  ModeKind kind;
  std::array<Rat, 8> alpha{};
  std::array<ExactScalar, 8> beta{};

  bool is_invariant() const {
    for (int k = 1; k <= 7; ++k)
      if (!beta[k].is_zero()) return false;
    return true;
  }
};

namespace detail {

inline ExactScalar two_pi_i(const Rat& r) {
  if (r == 0) return ExactScalar::zero();
  return ExactScalar::from_coeff(GaussRat(Rat(0), 2 * r)) *
         ExactScalar::pi_pow(1);
}

inline Rat rational_value(const ExactScalar& s) {
  GaussRat c = s.constant_value();
  if (c.im != 0)
    throw std::logic_error("real mode coefficient expected");
  return c.re;
}

inline std::array<Rat, 7> mode_sort_key(const ModeSpec& m) {
  return {m.alpha[4], m.alpha[5], m.alpha[6], m.alpha[7],
          m.alpha[1], m.alpha[2], m.alpha[3]};
}

}  // namespace detail

// lattice modes up to the cutoff: the character tuples and the reduced
// representatives of the infinite-type orbits, deterministically ordered
inline std::vector<ModeSpec> enumerate_modes(const NilpotentLieAlgebra& alg,
                                             const LatticeSpec& lattice,
                                             int cutoff) {
  if (cutoff < 0) throw std::invalid_argument("cutoff must be nonnegative");
  if (alg.name() != lattice.family)
    throw std::invalid_argument("lattice family does not match the algebra");

  ExactScalar inv_a = ExactScalar::variable(Var::a, -1);
  std::vector<ModeSpec> modes;
  std::vector<long> box;
  for (long v = -cutoff; v <= cutoff; ++v) box.push_back(v);

  auto push_character = [&](const std::array<long, 8>& n,
                            const std::vector<int>& slots) {
    ModeSpec m;
    m.kind = ModeKind::character;
    for (int k : slots) {
      m.alpha[k] = Rat(n[k]);
      m.beta[k] = detail::two_pi_i(Rat(n[k]));
    }
    modes.push_back(m);
  };

  if (alg.name() == "h1") {
    for (long n1 : box)
      for (long n2 : box)
        for (long n3 : box)
          for (long n4 : box)
            for (long n5 : box) {
              std::array<long, 8> n{};
              n[1] = n1;
              n[2] = n2;
              n[3] = n3;
              n[4] = n4;
              n[5] = n5;
              push_character(n, {1, 2, 3, 4, 5});
            }
    std::map<std::array<Rat, 6>, ModeSpec> reduced;
    for (long n2 : box)
      for (long n3 : box)
        for (long n4 : box)
          for (long n5 : box)
            for (long n6 : box)
              for (long n7 : box) {
                if (n6 == 0 && n7 == 0) continue;
                LinearFunctional l;
                l.at(2) = ExactScalar(static_cast<int>(n2));
                l.at(3) = ExactScalar(static_cast<int>(n3));
                l.at(4) = ExactScalar(static_cast<int>(n4));
                l.at(5) = ExactScalar(static_cast<int>(n5));
                l.at(6) =
                    ExactScalar(static_cast<int>(lattice.r2 * n6)) * inv_a;
                l.at(7) =
                    ExactScalar(static_cast<int>(lattice.r1 * n7)) * inv_a;
                LinearFunctional r =
                    reduce_orbit_representative(alg, l).functional;
                ModeSpec m;
                m.kind = ModeKind::infinite;
                m.alpha[2] = detail::rational_value(r.at(2));
                m.alpha[3] = detail::rational_value(r.at(3));
                m.alpha[4] = Rat(n4);
                m.alpha[5] = Rat(n5);
                m.alpha[6] = Rat(n6);
                m.alpha[7] = Rat(n7);
                m.beta[2] = detail::two_pi_i(m.alpha[2]);
                m.beta[3] = detail::two_pi_i(m.alpha[3]);
                m.beta[4] = detail::two_pi_i(m.alpha[4]);
                m.beta[5] = detail::two_pi_i(m.alpha[5]);
                m.beta[6] = detail::two_pi_i(Rat(lattice.r2 * n6)) * inv_a;
                m.beta[7] = detail::two_pi_i(Rat(lattice.r1 * n7)) * inv_a;
                std::array<Rat, 6> key{m.alpha[2], m.alpha[3], m.alpha[4],
                                       m.alpha[5], m.alpha[6], m.alpha[7]};
                reduced.emplace(key, m);
              }
    for (auto& [key, m] : reduced) modes.push_back(m);
  } else if (alg.name() == "h2") {
    ExactScalar inv_b = ExactScalar::variable(Var::b, -1);
    ExactScalar inv_c = ExactScalar::variable(Var::c, -1);
    for (long n1 : box)
      for (long n2 : box)
        for (long n3 : box)
          for (long n7 : box) {
            std::array<long, 8> n{};
            n[1] = n1;
            n[2] = n2;
            n[3] = n3;
            n[7] = n7;
            push_character(n, {1, 2, 3, 7});
          }
    std::map<std::array<Rat, 7>, ModeSpec> reduced;
    for (long n1 : box)
      for (long n2 : box)
        for (long n4 : box)
          for (long n5 : box)
            for (long n6 : box)
              for (long n7 : box) {
                if (n4 == 0 && n5 == 0 && n6 == 0) continue;
                LinearFunctional l;
                l.at(1) = ExactScalar(static_cast<int>(n1));
                l.at(2) = ExactScalar(static_cast<int>(n2));
                l.at(4) = ExactScalar(static_cast<int>(n4)) * inv_a;
                l.at(5) = ExactScalar(static_cast<int>(n5)) * inv_b;
                l.at(6) = ExactScalar(static_cast<int>(n6)) * inv_c;
                l.at(7) = ExactScalar(static_cast<int>(n7));
                LinearFunctional r =
                    reduce_orbit_representative(alg, l).functional;
                ModeSpec m;
                m.kind = ModeKind::infinite;
                m.alpha[1] = detail::rational_value(r.at(1));
                m.alpha[2] = detail::rational_value(r.at(2));
                m.alpha[3] = detail::rational_value(r.at(3));
                m.alpha[4] = Rat(n4);
                m.alpha[5] = Rat(n5);
                m.alpha[6] = Rat(n6);
                m.alpha[7] = Rat(n7);
                m.beta[1] = detail::two_pi_i(m.alpha[1]);
                m.beta[2] = detail::two_pi_i(m.alpha[2]);
                m.beta[3] = detail::two_pi_i(m.alpha[3]);
                m.beta[4] = detail::two_pi_i(Rat(n4)) * inv_a;
                m.beta[5] = detail::two_pi_i(Rat(n5)) * inv_b;
                m.beta[6] = detail::two_pi_i(Rat(n6)) * inv_c;
                m.beta[7] = detail::two_pi_i(Rat(n7));
                std::array<Rat, 7> key{m.alpha[1], m.alpha[2], m.alpha[3],
                                       m.alpha[4], m.alpha[5], m.alpha[6],
                                       m.alpha[7]};
                reduced.emplace(key, m);
              }
    for (auto& [key, m] : reduced) modes.push_back(m);
  } else {
    throw std::invalid_argument("mode enumeration requires h1 or h2");
  }

  std::sort(modes.begin(), modes.end(),
            [](const ModeSpec& x, const ModeSpec& y) {
              return detail::mode_sort_key(x) < detail::mode_sort_key(y);
            });
  return modes;
}

}  // namespace nucert::kirillov
