#pragma once

#include <optional>
#include <vector>

#include "sbim/laurent.hpp"
#include "sbim/scalars.hpp"

namespace sbim {

/// Plain cubic product; Ring only needs +, * and value semantics.
template <class R>
DenseMat<R> mat_mul(const DenseMat<R>& a, const DenseMat<R>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: shape mismatch");
  DenseMat<R> out(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      R acc{};
      for (Eigen::Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

template <class R>
DenseMat<R> ring_identity(Eigen::Index n) {
  DenseMat<R> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = R(i == j ? 1 : 0);
  return out;
}

template <class R>
bool is_zero_mat(const DenseMat<R>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!(a(i, j) == R(0))) return false;
  return true;
}

/// Reduced row echelon form over an exact field.
template <class K>
struct Rref {
  DenseMat<K> mat;
  std::vector<int> pivot_cols;
  int rank = 0;
};

template <class K>
Rref<K> rref(DenseMat<K> m) {
  Rref<K> out;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  int lead = 0;
  for (Eigen::Index c = 0; c < cols && lead < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = lead; i < rows; ++i)
      if (!is_zero(m(i, c))) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != lead) m.row(lead).swap(m.row(piv));
    K inv = field_inv(m(lead, c));
    for (Eigen::Index j = c; j < cols; ++j) m(lead, j) = m(lead, j) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == lead || is_zero(m(i, c))) continue;
      K f = m(i, c);
      for (Eigen::Index j = c; j < cols; ++j) m(i, j) -= f * m(lead, j);
    }
    out.pivot_cols.push_back(static_cast<int>(c));
    ++lead;
  }
  out.rank = lead;
  out.mat = std::move(m);
  return out;
}

template <class K>
int rank(const DenseMat<K>& m) {
  return rref(m).rank;
}

/// Columns form a basis of the kernel.
template <class K>
DenseMat<K> nullspace(const DenseMat<K>& m) {
  Rref<K> r = rref(m);
  const Eigen::Index cols = m.cols();
  std::vector<int> free_cols;
  std::vector<int> pivot_of_col(cols, -1);
  for (int k = 0; k < r.rank; ++k) pivot_of_col[r.pivot_cols[k]] = k;
  for (Eigen::Index c = 0; c < cols; ++c)
    if (pivot_of_col[c] < 0) free_cols.push_back(static_cast<int>(c));
  DenseMat<K> out(cols, static_cast<Eigen::Index>(free_cols.size()));
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    for (Eigen::Index j = 0; j < out.cols(); ++j) out(i, j) = K(0);
  for (std::size_t jf = 0; jf < free_cols.size(); ++jf) {
    int f = free_cols[jf];
    out(f, static_cast<Eigen::Index>(jf)) = K(1);
    for (int k = 0; k < r.rank; ++k) out(r.pivot_cols[k], static_cast<Eigen::Index>(jf)) = -r.mat(k, f);
  }
  return out;
}

/// Any exact solution of A x = b, or nullopt when inconsistent.
template <class K>
std::optional<DenseVec<K>> solve(const DenseMat<K>& a, const DenseVec<K>& b) {
  DenseMat<K> aug(a.rows(), a.cols() + 1);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b(i);
  }
  Rref<K> r = rref(std::move(aug));
  for (int k = 0; k < r.rank; ++k)
    if (r.pivot_cols[k] == a.cols()) return std::nullopt;
  DenseVec<K> x(a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) x(j) = K(0);
  for (int k = 0; k < r.rank; ++k) x(r.pivot_cols[k]) = r.mat(k, a.cols());
  return x;
}

template <class K>
std::optional<DenseMat<K>> inverse(const DenseMat<K>& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  const Eigen::Index n = a.rows();
  DenseMat<K> aug(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      aug(i, j) = a(i, j);
      aug(i, n + j) = K(i == j ? 1 : 0);
    }
  Rref<K> r = rref(std::move(aug));
  if (r.rank < n) return std::nullopt;
  for (int k = 0; k < r.rank; ++k)
    if (r.pivot_cols[k] != k) return std::nullopt;
  DenseMat<K> out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = r.mat(i, n + j);
  return out;
}

/// Fraction-free determinant over an integral domain with exact division.
template <class R>
R bareiss_det(DenseMat<R> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of nonsquare matrix");
  const Eigen::Index n = m.rows();
  if (n == 0) return R(1);
  R prev(1);
  int sign = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == R(0)) {
      Eigen::Index swap_row = -1;
      for (Eigen::Index i = k + 1; i < n; ++i)
        if (!(m(i, k) == R(0))) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return R(0);
      m.row(k).swap(m.row(swap_row));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j) {
        R num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        auto q = exact_divide(num, prev);
        if (!q) throw std::logic_error("bareiss_det: division failure (arithmetic bug)");
        m(i, j) = *q;
      }
    prev = m(k, k);
  }
  R det = m(n - 1, n - 1);
  if (sign < 0) det = -det;
  return det;
}

template <>
inline Rational bareiss_det<Rational>(DenseMat<Rational> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of nonsquare matrix");
  const Eigen::Index n = m.rows();
  Rational det(1);
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = k; i < n; ++i)
      if (!is_zero(m(i, k))) {
        piv = i;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != k) {
      m.row(k).swap(m.row(piv));
      det = -det;
    }
    det *= m(k, k);
    Rational inv = field_inv(m(k, k));
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (is_zero(m(i, k))) continue;
      Rational f = m(i, k) * inv;
      for (Eigen::Index j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

/// Incremental sparse Gaussian elimination over an exact field; rows are
/// sorted (column, coefficient) lists. Used for the boxed intertwiner solves,
/// where the systems are large but very sparse.
template <class K>
class SparseEliminator {
 public:
  explicit SparseEliminator(int cols) : cols_(cols), pivot_of_col_(cols, -1) {}

  using Row = std::vector<std::pair<int, K>>;

  void add_row(Row row) {
    row = prune(std::move(row));
    std::size_t at = 0;
    while (at < row.size()) {
      int c = row[at].first;
      int p = pivot_of_col_[c];
      if (p < 0) {
        ++at;
        continue;
      }
      row = combine(row, pivot_rows_[p], row[at].second);
      // Entries before position `at` were already pivot-free and stay intact.
    }
    row = prune(std::move(row));
    if (row.empty()) return;
    K inv = field_inv(row.front().second);
    for (auto& [c, v] : row) v = v * inv;
    pivot_of_col_[row.front().first] = static_cast<int>(pivot_rows_.size());
    pivot_rows_.push_back(std::move(row));
  }

  int rank() const { return static_cast<int>(pivot_rows_.size()); }
  int cols() const { return cols_; }

  /// Basis of the solution space of the accumulated homogeneous system.
  std::vector<DenseVec<K>> nullspace() const {
    std::vector<int> pivot_cols;
    for (int c = 0; c < cols_; ++c)
      if (pivot_of_col_[c] >= 0) pivot_cols.push_back(c);
    std::vector<DenseVec<K>> basis;
    for (int f = 0; f < cols_; ++f) {
      if (pivot_of_col_[f] >= 0) continue;
      DenseVec<K> x(cols_);
      for (int c = 0; c < cols_; ++c) x(c) = K(0);
      x(f) = K(1);
      for (auto it = pivot_cols.rbegin(); it != pivot_cols.rend(); ++it) {
        const Row& row = pivot_rows_[pivot_of_col_[*it]];
        K acc(0);
        for (std::size_t k = 1; k < row.size(); ++k) acc += row[k].second * x(row[k].first);
        x(*it) = -acc;
      }
      basis.push_back(std::move(x));
    }
    return basis;
  }

 private:
  static Row combine(const Row& a, const Row& b, const K& factor) {
    // a - factor * b, merging sorted column lists.
    Row out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i >= a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, -(factor * b[j].second));
        ++j;
      } else {
        K v = a[i].second - factor * b[j].second;
        if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

  static Row prune(Row row) {
    Row out;
    out.reserve(row.size());
    for (auto& e : row)
      if (!is_zero(e.second)) out.push_back(std::move(e));
    return out;
  }

  int cols_;
  std::vector<int> pivot_of_col_;
  std::vector<Row> pivot_rows_;
};

}  // namespace sbim
