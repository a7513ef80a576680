#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hyc/error.hpp"
#include "hyc/rational.hpp"

namespace hyc {

// Small row-major dense matrix used for representations. Works for both
// Rational (exact checks) and double.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix& operator+=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  DenseMatrix& operator-=(const DenseMatrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  DenseMatrix& operator*=(const T& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend DenseMatrix operator+(DenseMatrix a, const DenseMatrix& b) { return a += b; }
  friend DenseMatrix operator-(DenseMatrix a, const DenseMatrix& b) { return a -= b; }
  friend DenseMatrix operator*(DenseMatrix a, const T& s) { return a *= s; }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("matrix dimension mismatch in product");
    DenseMatrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == T(0)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const T& x) { return x == T(0); });
  }

 private:
  void check_same(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("matrix dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return x.get_d(); }

template <class T>
Eigen::MatrixXd to_eigen(const DenseMatrix<T>& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = to_double(m(i, j));
  return e;
}

inline DenseMatrix<double> from_eigen(const Eigen::MatrixXd& e) {
  DenseMatrix<double> m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

// Spectral norm (largest singular value). Exact zero short-circuits so the
// rational path never touches floating point for exact solutions.
template <class T>
double operator_norm(const DenseMatrix<T>& m) {
  if (m.is_zero()) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

struct PsdCheck {
  bool psd = true;
  std::string reason;  // empty when psd
};

// Exact positive-semidefiniteness test by symmetric Gaussian elimination
// (LDL^T with diagonal pivoting). A zero pivot is only admissible when its
// whole remaining row is zero.
inline PsdCheck check_psd_exact(DenseMatrix<Rational> s) {
  const std::size_t n = s.rows();
  if (!s.square()) return {false, "matrix is not square"};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (s(i, j) != s(j, i)) return {false, "matrix is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")"};

  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    std::optional<std::size_t> pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (s(i, i) < 0)
        return {false, "negative pivot " + s(i, i).get_str() + " at index " + std::to_string(i)};
      if (s(i, i) > 0 && !pivot) pivot = i;
    }
    if (!pivot) {
      for (std::size_t i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (!done[j] && s(i, j) != 0)
            return {false, "zero pivot at index " + std::to_string(i) + " with nonzero row entry at " + std::to_string(j)};
      }
      return {};
    }
    const std::size_t p = *pivot;
    done[p] = true;
    const Rational d = s(p, p);
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || s(i, p) == 0) continue;
      const Rational f = s(i, p) / d;
      for (std::size_t j = 0; j < n; ++j) {
        if (done[j]) continue;
        s(i, j) -= f * s(p, j);
      }
    }
  }
  return {};
}

using SparseRow = std::vector<std::pair<std::size_t, Rational>>;  // sorted by column

// row += factor * other, both sorted by column; drops cancelled entries.
inline void axpy(SparseRow& row, const Rational& factor, const SparseRow& other) {
  SparseRow out;
  out.reserve(row.size() + other.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.push_back(std::move(row[i++]));
    } else if (i == row.size() || other[j].first < row[i].first) {
      out.emplace_back(other[j].first, factor * other[j].second);
      ++j;
    } else {
      Rational v = row[i].second + factor * other[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  row = std::move(out);
}

inline const Rational* find_entry(const SparseRow& row, std::size_t col) {
  auto it = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

// Incremental exact reduced-row-echelon form of an affine system
// sum_j a_j x_j = b. Each stored row remembers which combination of the
// inserted equations produced it, so infeasibility and "x_j is determined"
// facts can be turned into explicit multiplier vectors.
class RationalEliminator {
 public:
  enum class Outcome { independent, dependent, inconsistent };

  explicit RationalEliminator(std::size_t num_columns, bool track = true)
      : pivot_row_(num_columns, npos), col_rows_(num_columns), track_(track) {}

  std::size_t num_columns() const noexcept { return pivot_row_.size(); }
  std::size_t rank() const noexcept { return rows_.size(); }

  // Inserts equation `origin` (an opaque id used in the combinations).
  Outcome insert(SparseRow coeffs, Rational rhs, std::size_t origin) {
    Row r{std::move(coeffs), std::move(rhs), {}};
    if (track_) r.combo.emplace_back(origin, Rational(1));
    reduce(r);
    if (r.coeffs.empty()) {
      if (r.rhs == 0) return Outcome::dependent;
      if (!conflict_) conflict_ = std::move(r);
      return Outcome::inconsistent;
    }
    // Pivot on the column that currently appears in the fewest rows.
    std::size_t best = r.coeffs.front().first;
    std::size_t best_count = live_count(best);
    for (const auto& [c, v] : r.coeffs) {
      std::size_t cnt = live_count(c);
      if (cnt < best_count) {
        best = c;
        best_count = cnt;
      }
    }
    const Rational inv = 1 / *find_entry(r.coeffs, best);
    scale(r, inv);
    const std::size_t idx = rows_.size();
    // Eliminate the new pivot column from every existing row.
    const std::vector<std::size_t> holders = col_rows_[best];
    for (std::size_t other : holders) {
      if (other >= rows_.size()) continue;
      Row& o = rows_[other];
      const Rational* v = find_entry(o.coeffs, best);
      if (!v) continue;
      const Rational f = -*v;
      axpy(o.coeffs, f, r.coeffs);
      o.rhs += f * r.rhs;
      if (track_) axpy(o.combo, f, r.combo);
      for (const auto& [c, val] : r.coeffs)
        if (c != best) col_rows_[c].push_back(other);
    }
    for (const auto& [c, v] : r.coeffs) col_rows_[c].push_back(idx);
    pivot_row_[best] = idx;
    pivot_col_.push_back(best);
    rows_.push_back(std::move(r));
    return Outcome::independent;
  }

  bool inconsistent() const noexcept { return conflict_.has_value(); }

  // Multipliers y with y^T A = 0 and y^T b = -1.
  SparseRow infeasibility_multipliers() const {
    if (!conflict_) throw Error("system is consistent");
    SparseRow y = conflict_->combo;
    const Rational f = -1 / conflict_->rhs;
    for (auto& [i, v] : y) v *= f;
    return y;
  }

  bool is_pivot(std::size_t col) const { return pivot_row_[col] != npos; }

  // A column is determined when its RREF row has no other entry.
  std::optional<Rational> determined_value(std::size_t col) const {
    const std::size_t r = pivot_row_[col];
    if (r == npos || rows_[r].coeffs.size() != 1) return std::nullopt;
    return rows_[r].rhs;
  }

  // Multipliers y with y^T A = e_col^T (only valid for determined columns).
  const SparseRow& determined_multipliers(std::size_t col) const {
    return rows_.at(pivot_row_.at(col)).combo;
  }

  // Particular solution (free variables zero) and a null-space basis; one
  // basis vector per free column.
  void affine_parametrization(std::vector<Rational>& particular, std::vector<std::size_t>& free_cols,
                              std::vector<SparseRow>& pivot_rows_by_col) const {
    const std::size_t n = num_columns();
    particular.assign(n, Rational(0));
    free_cols.clear();
    pivot_rows_by_col.assign(n, {});
    for (std::size_t c = 0; c < n; ++c) {
      if (pivot_row_[c] == npos) {
        free_cols.push_back(c);
        continue;
      }
      const Row& r = rows_[pivot_row_[c]];
      particular[c] = r.rhs;
      pivot_rows_by_col[c] = r.coeffs;
    }
  }

 private:
  struct Row {
    SparseRow coeffs;
    Rational rhs;
    SparseRow combo;
  };

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  void reduce(Row& r) const {
    // Pivot rows are in RREF, so one pass over the incoming pivot columns
    // suffices: subtracting a pivot row never introduces another pivot column.
    std::vector<std::pair<std::size_t, Rational>> hits;
    for (const auto& [c, v] : r.coeffs)
      if (pivot_row_[c] != npos) hits.emplace_back(pivot_row_[c], v);
    for (const auto& [ri, v] : hits) {
      const Row& p = rows_[ri];
      const Rational f = -v;
      axpy(r.coeffs, f, p.coeffs);
      r.rhs += f * p.rhs;
      if (track_) axpy(r.combo, f, p.combo);
    }
  }

  static void scale(Row& r, const Rational& f) {
    for (auto& [c, v] : r.coeffs) v *= f;
    r.rhs *= f;
    for (auto& [c, v] : r.combo) v *= f;
  }

  std::size_t live_count(std::size_t col) const { return col_rows_[col].size(); }

  std::vector<Row> rows_;
  std::vector<std::size_t> pivot_row_;
  std::vector<std::size_t> pivot_col_;
  std::vector<std::vector<std::size_t>> col_rows_;
  std::optional<Row> conflict_;
  bool track_;
};

}  // namespace hyc
