// Dense matrices over the exact scalar ring, with division-free determinant,
// characteristic polynomial, rank and kernel certificates. Sizes here are
// small (at most a few dozen rows), so subset-enumeration algorithms are the
// right tool: they never divide by a polynomial.
#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "nucert/exactnum.hpp"

namespace nucert::linalg {

using exactnum::Assignment;
using exactnum::ExactScalar;

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols) {}

  static PolyMatrix identity(int n) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = ExactScalar::one();
    return m;
  }
  static PolyMatrix scalar(int n, const ExactScalar& s) {
    PolyMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = s;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  ExactScalar& at(int r, int c) { return data_[index(r, c)]; }
  const ExactScalar& at(int r, int c) const { return data_[index(r, c)]; }

  bool operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!x.is_zero()) return false;
    return true;
  }

  PolyMatrix operator+(const PolyMatrix& o) const {
    check_same_shape(o);
    PolyMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      r.data_[k] = data_[k] + o.data_[k];
    return r;
  }
  PolyMatrix operator-(const PolyMatrix& o) const {
    check_same_shape(o);
    PolyMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      r.data_[k] = data_[k] - o.data_[k];
    return r;
  }
  PolyMatrix operator-() const {
    PolyMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
    return r;
  }
  PolyMatrix operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("shape mismatch");
    PolyMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const ExactScalar& x = at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) {
          if (o.at(k, j).is_zero()) continue;
          r.at(i, j) += x * o.at(k, j);
        }
      }
    }
    return r;
  }

  PolyMatrix scaled(const ExactScalar& s) const {
    PolyMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = s * data_[k];
    return r;
  }

  PolyMatrix transpose() const {
    PolyMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  PolyMatrix dagger() const {
    PolyMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j).conj();
    return r;
  }
  PolyMatrix conj() const {
    PolyMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      r.data_[k] = data_[k].conj();
    return r;
  }

  ExactScalar trace() const {
    if (rows_ != cols_) throw std::invalid_argument("trace of non-square");
    ExactScalar t;
    for (int i = 0; i < rows_; ++i) t += at(i, i);
    return t;
  }

  PolyMatrix submatrix(const std::vector<int>& rows,
                       const std::vector<int>& cols) const {
    PolyMatrix r(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j)
        r.at(static_cast<int>(i), static_cast<int>(j)) = at(rows[i], cols[j]);
    return r;
  }

  static PolyMatrix vstack(const PolyMatrix& top, const PolyMatrix& bottom) {
    if (top.cols_ != bottom.cols_)
      throw std::invalid_argument("shape mismatch");
    PolyMatrix r(top.rows_ + bottom.rows_, top.cols_);
    for (int i = 0; i < top.rows_; ++i)
      for (int j = 0; j < top.cols_; ++j) r.at(i, j) = top.at(i, j);
    for (int i = 0; i < bottom.rows_; ++i)
      for (int j = 0; j < top.cols_; ++j)
        r.at(top.rows_ + i, j) = bottom.at(i, j);
    return r;
  }

  PolyMatrix map(const std::function<ExactScalar(const ExactScalar&)>& f) const {
    PolyMatrix r(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = f(data_[k]);
    return r;
  }

  std::vector<std::complex<double>> eval(const Assignment& at) const {
    std::vector<std::complex<double>> out(data_.size());
    for (std::size_t k = 0; k < data_.size(); ++k) out[k] = data_[k].eval(at);
    return out;
  }

  /// Determinant by dynamic programming over column subsets; n multiplications
  /// per subset and no division. Intended for n <= 16.
  ExactScalar det() const {
    if (rows_ != cols_) throw std::invalid_argument("det of non-square");
    int n = rows_;
    if (n == 0) return ExactScalar::one();
    if (n > 16) throw std::invalid_argument("det size limit exceeded");
    std::vector<ExactScalar> minor(std::size_t{1} << n);
    minor[0] = ExactScalar::one();
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
      int k = __builtin_popcount(mask);
      ExactScalar acc;
      // expanding along row k-1, the cofactor sign of the entry in column
      // position pos is (-1)^{(k-1)+pos}
      int pos = k - 1;
      for (int j = 0; j < n; ++j) {
        if (!(mask & (std::uint32_t{1} << j))) continue;
        const ExactScalar& entry = at(k - 1, j);
        if (!entry.is_zero()) {
          ExactScalar contrib = entry * minor[mask ^ (std::uint32_t{1} << j)];
          acc = (pos % 2 == 0) ? acc + contrib : acc - contrib;
        }
        ++pos;
      }
      minor[mask] = acc;
    }
    return minor[(std::uint32_t{1} << n) - 1];
  }

  /// Coefficients of det(lambda I - M), ascending in lambda, leading
  /// coefficient 1. Divisions occur by integers only and are exact.
  std::vector<ExactScalar> charpoly() const {
    if (rows_ != cols_) throw std::invalid_argument("charpoly of non-square");
    int n = rows_;
    std::vector<ExactScalar> a(static_cast<std::size_t>(n) + 1);
    a[n] = ExactScalar::one();
    PolyMatrix nk = identity(n);
    for (int k = 1; k <= n; ++k) {
      PolyMatrix pk = *this * nk;
      ExactScalar coeff = (-pk.trace()).div_exact(ExactScalar(k));
      a[n - k] = coeff;
      if (k < n) nk = pk + scalar(n, coeff);
    }
    return a;
  }

 private:
  std::size_t index(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw std::out_of_range("matrix index");
    return static_cast<std::size_t>(r) * cols_ + c;
  }
  void check_same_shape(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("shape mismatch");
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<ExactScalar> data_;
};

inline PolyMatrix operator*(const ExactScalar& s, const PolyMatrix& m) {
  return m.scaled(s);
}

namespace detail {
inline void enumerate_subsets(int n, int k, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return;
  for (;;) {
    visit(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}
}  // namespace detail

/// Searches for a nonzero r x r minor; returns the (row, column) index sets
/// of the first one found.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>>
find_nonzero_minor(const PolyMatrix& m, int r) {
  std::optional<std::pair<std::vector<int>, std::vector<int>>> found;
  detail::enumerate_subsets(m.rows(), r, [&](const std::vector<int>& rows) {
    if (found) return;
    detail::enumerate_subsets(m.cols(), r, [&](const std::vector<int>& cols) {
      if (found) return;
      if (!m.submatrix(rows, cols).det().is_zero()) found = {rows, cols};
    });
  });
  return found;
}

/// True when every minor of the given size vanishes.
inline bool all_minors_vanish(const PolyMatrix& m, int r) {
  if (r > m.rows() || r > m.cols()) return true;
  return !find_nonzero_minor(m, r).has_value();
}

/// Row and column index sets of an invertible pivot minor; its size is the
/// rank of the matrix.
struct PivotMinor {
  std::vector<int> rows;
  std::vector<int> cols;
  int rank() const { return static_cast<int>(rows.size()); }
};

/// Exact rank certificate by growing an invertible pivot minor. An
/// invertible r x r minor that admits no one-row-one-column invertible
/// extension certifies rank exactly r: were the rank larger, the Schur
/// complement of the pivot block would have a nonzero entry, and that entry
/// would extend the pivot.
inline PivotMinor pivot_minor(const PolyMatrix& m) {
  int bound = std::min(m.rows(), m.cols());
  PivotMinor piv;
  while (piv.rank() < bound) {
    bool grew = false;
    for (int i = 0; i < m.rows() && !grew; ++i) {
      if (std::find(piv.rows.begin(), piv.rows.end(), i) != piv.rows.end())
        continue;
      for (int j = 0; j < m.cols() && !grew; ++j) {
        if (std::find(piv.cols.begin(), piv.cols.end(), j) != piv.cols.end())
          continue;
        auto rows = piv.rows;
        auto cols = piv.cols;
        rows.push_back(i);
        cols.push_back(j);
        std::sort(rows.begin(), rows.end());
        std::sort(cols.begin(), cols.end());
        if (!m.submatrix(rows, cols).det().is_zero()) {
          piv.rows = rows;
          piv.cols = cols;
          grew = true;
        }
      }
    }
    if (!grew) break;
  }
  return piv;
}

inline int rank(const PolyMatrix& m) { return pivot_minor(m).rank(); }

/// Kernel basis over the fraction field, presented with polynomial entries:
/// given a pivot minor of full rank r, each free column yields a kernel
/// vector whose free coordinate equals the pivot determinant and whose pivot
/// coordinates are signed minors (Cramer replacement), so no division occurs.
/// The matrix must have exact rank r for the result to be a kernel basis.
inline std::vector<std::vector<ExactScalar>> kernel_basis(const PolyMatrix& m) {
  int n = m.cols();
  PivotMinor piv = pivot_minor(m);
  int r = piv.rank();
  if (r == 0) {
    std::vector<std::vector<ExactScalar>> basis;
    for (int j = 0; j < n; ++j) {
      std::vector<ExactScalar> v(n);
      v[j] = ExactScalar::one();
      basis.push_back(std::move(v));
    }
    return basis;
  }
  ExactScalar pivot_det = m.submatrix(piv.rows, piv.cols).det();
  std::vector<std::vector<ExactScalar>> basis;
  for (int j = 0; j < n; ++j) {
    if (std::find(piv.cols.begin(), piv.cols.end(), j) != piv.cols.end())
      continue;
    std::vector<ExactScalar> v(n);
    v[j] = pivot_det;
    for (int i = 0; i < r; ++i) {
      auto cols = piv.cols;
      cols[i] = j;
      v[piv.cols[i]] = -m.submatrix(piv.rows, cols).det();
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Applies a matrix to a coordinate vector.
inline std::vector<ExactScalar> apply(const PolyMatrix& m,
                                      const std::vector<ExactScalar>& v) {
  if (static_cast<int>(v.size()) != m.cols())
    throw std::invalid_argument("shape mismatch");
  std::vector<ExactScalar> out(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out[i] += m.at(i, j) * v[j];
  return out;
}

/// Odd-coefficient vanishing of the characteristic polynomial: true when
/// det(lambda I - M) contains only even powers of lambda (n even), which
/// forces the eigenvalue multiset to be symmetric about zero.
inline bool charpoly_is_even(const PolyMatrix& m) {
  auto a = m.charpoly();
  for (std::size_t k = 1; k < a.size(); k += 2)
    if (!a[k].is_zero()) return false;
  return true;
}

}  // namespace nucert::linalg
