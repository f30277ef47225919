#pragma once

// Graded tensor product of the exterior algebras on a 7-dimensional tangent
// model V and an 8-dimensional spinor model E, with the sign rule
// (a1 (x) b1)(a2 (x) b2) = (-1)^{|b1||a2|} a1 a2 (x) b1 b2, truncated
// exponentials, and the Berezin integral against the top E-form.
//
// Terms are keyed by a pair of bitmasks: bit i-1 set in the V-mask means the
// generator e^i is present, bit k-1 in the E-mask means f^k is present.
// Coefficients are kept only on canonically sorted products, with shuffle
// signs applied on multiplication.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>

#include "nucert/exactnum.hpp"

namespace nucert::superalg {

using exactnum::ExactScalar;

using MaskPair = std::pair<std::uint32_t, std::uint32_t>;

namespace detail {

constexpr std::uint32_t kVFull = 0x7f;
constexpr std::uint32_t kEFull = 0xff;

// sign of merging two disjoint sorted index sets into one sorted set
inline int shuffle_sign(std::uint32_t left, std::uint32_t right) {
  int sign = 1;
  for (int j = 0; j < 32; ++j) {
    if (!(right >> j & 1)) continue;
    if (__builtin_popcount(left >> (j + 1)) % 2) sign = -sign;
  }
  return sign;
}

}  // namespace detail

class SuperForm {
 public:
  SuperForm() = default;

  static SuperForm one() { return term(0, 0, ExactScalar::one()); }

  static SuperForm term(std::uint32_t vmask, std::uint32_t emask,
                        ExactScalar coeff) {
    if (vmask > detail::kVFull || emask > detail::kEFull)
      throw std::out_of_range("generator index outside V or E rank");
    SuperForm s;
    if (!coeff.is_zero()) s.terms_.emplace(MaskPair{vmask, emask}, std::move(coeff));
    return s;
  }

  const std::map<MaskPair, ExactScalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const SuperForm& o) const { return terms_ == o.terms_; }
  bool operator!=(const SuperForm& o) const { return !(*this == o); }

  SuperForm& operator+=(const SuperForm& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }

  friend SuperForm operator+(SuperForm a, const SuperForm& b) { return a += b; }

  SuperForm operator-() const {
    SuperForm r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }

  friend SuperForm operator-(const SuperForm& a, const SuperForm& b) {
    return a + (-b);
  }

  SuperForm scaled(const ExactScalar& s) const {
    SuperForm r;
    if (s.is_zero()) return r;
    for (const auto& [k, c] : terms_) {
      ExactScalar v = c * s;
      if (!v.is_zero()) r.terms_.emplace(k, std::move(v));
    }
    return r;
  }

  int min_v_degree() const {
    int deg = 8;
    for (const auto& [k, c] : terms_)
      deg = std::min(deg, __builtin_popcount(k.first));
    return terms_.empty() ? 0 : deg;
  }

  int max_v_degree() const {
    int deg = 0;
    for (const auto& [k, c] : terms_)
      deg = std::max(deg, __builtin_popcount(k.first));
    return deg;
  }

 private:
  void add_term(const MaskPair& key, const ExactScalar& c) {
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_.emplace(key, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  std::map<MaskPair, ExactScalar> terms_;

  friend SuperForm super_mul(const SuperForm&, const SuperForm&);
};

inline int term_parity(const MaskPair& key) {
  return (__builtin_popcount(key.first) + __builtin_popcount(key.second)) % 2;
}

/// -1 if the form has a term of one parity and a term of the other, else the
/// common parity (0 for the zero form).
inline int homogeneous_parity(const SuperForm& x) {
  int parity = -2;
  for (const auto& [k, c] : x.terms()) {
    int p = term_parity(k);
    if (parity == -2)
      parity = p;
    else if (parity != p)
      return -1;
  }
  return parity == -2 ? 0 : parity;
}

inline SuperForm super_mul(const SuperForm& x, const SuperForm& y) {
  SuperForm r;
  for (const auto& [k1, c1] : x.terms()) {
    int e1_deg = __builtin_popcount(k1.second);
    for (const auto& [k2, c2] : y.terms()) {
      if ((k1.first & k2.first) || (k1.second & k2.second)) continue;
      int sign = detail::shuffle_sign(k1.first, k2.first) *
                 detail::shuffle_sign(k1.second, k2.second);
      // sign rule: moving a2 past b1
      if ((e1_deg * __builtin_popcount(k2.first)) % 2) sign = -sign;
      ExactScalar c = c1 * c2;
      if (sign < 0) c = -c;
      r.add_term({k1.first | k2.first, k1.second | k2.second}, c);
    }
  }
  return r;
}

inline SuperForm super_pow(const SuperForm& x, int n) {
  SuperForm r = SuperForm::one();
  for (int k = 0; k < n; ++k) r = super_mul(r, x);
  return r;
}

/// Series exponential for forms that are nilpotent through their V-degree:
/// every term must have V-degree at least 1, so the series stops once the
/// V-degree cap (the rank of V) is exceeded.  The scalar Gaussian factor is
/// never expanded here; its moments are integrated exactly downstream.
inline SuperForm super_exp(const SuperForm& x, int v_degree_cap = 7) {
  if (x.is_zero()) return SuperForm::one();
  if (x.min_v_degree() < 1)
    throw std::domain_error("exponential of a non-nilpotent super form");
  SuperForm series = SuperForm::one();
  SuperForm power = SuperForm::one();
  exactnum::Rat factorial = 1;
  for (int n = 1; n <= v_degree_cap; ++n) {
    power = super_mul(power, x);
    if (power.is_zero()) break;
    factorial *= n;
    series += power.scaled(
        ExactScalar::from_coeff(exactnum::GaussRat(exactnum::Rat(1) / factorial)));
  }
  return series;
}

/// Integral against the top exterior power of E with the rank-8 normalization
/// (-1)^{8*9/2} / pi^4 = +pi^{-4}; terms of lower E-degree integrate to zero.
/// The result is a form on V, keyed by V-mask.
inline std::map<std::uint32_t, ExactScalar> berezin(const SuperForm& x) {
  std::map<std::uint32_t, ExactScalar> out;
  ExactScalar norm = ExactScalar::pi_pow(-4);
  for (const auto& [k, c] : x.terms()) {
    if (k.second != detail::kEFull) continue;
    ExactScalar v = c * norm;
    if (!v.is_zero()) out.emplace(k.first, std::move(v));
  }
  return out;
}

inline SuperForm v_degree_component(const SuperForm& x, int degree) {
  SuperForm r;
  for (const auto& [k, c] : x.terms())
    if (__builtin_popcount(k.first) == degree) r += SuperForm::term(k.first, k.second, c);
  return r;
}

}  // namespace nucert::superalg
