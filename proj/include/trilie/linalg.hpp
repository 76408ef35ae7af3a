#ifndef TRILIE_LINALG_HPP
#define TRILIE_LINALG_HPP

#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "scalar.hpp"

namespace trilie {

/// Sparse vector: (index, value) pairs sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<std::size_t, Scalar>>;

namespace detail {

// dst + c * src, both sorted.
inline SparseVec axpy(const SparseVec& dst, const Scalar& c, const SparseVec& src) {
  SparseVec out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, c * src[j].second);
      ++j;
    } else {
      Scalar v = dst[i].second + c * src[j].second;
      if (sgn(v) != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

inline SparseVec to_sparse(const Vector& v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace_back(i, v[i]);
  return out;
}

}  // namespace detail

/// Dense-interface matrix over the rationals with sparse row storage.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}
  Matrix(std::initializer_list<std::initializer_list<Scalar>> rows) {
    cols_ = rows.size() ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionError("ragged matrix literal");
      data_.push_back(detail::to_sparse(Vector(r)));
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.data_[i].emplace_back(i, Scalar(1));
    return m;
  }

  static Matrix from_rows(std::size_t cols, std::vector<SparseVec> rows) {
    Matrix m;
    m.cols_ = cols;
    m.data_ = std::move(rows);
    return m;
  }

  static Matrix from_dense(const std::vector<Vector>& rows, std::size_t cols) {
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw DimensionError("ragged matrix rows");
      m.data_[i] = detail::to_sparse(rows[i]);
    }
    return m;
  }

  /// Builds the matrix whose j-th column is `columns[j]`.
  static Matrix from_columns(std::size_t rows, const std::vector<Vector>& columns) {
    Matrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw DimensionError("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i)
        if (sgn(columns[j][i]) != 0) m.data_[i].emplace_back(j, columns[j][i]);
    }
    return m;
  }

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }

  const SparseVec& row(std::size_t i) const { return data_.at(i); }

  Scalar get(std::size_t i, std::size_t j) const {
    const auto& r = data_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) return it->second;
    return Scalar(0);
  }

  void set(std::size_t i, std::size_t j, const Scalar& v) {
    if (j >= cols_) throw DimensionError("column index out of range");
    auto& r = data_.at(i);
    auto it = std::lower_bound(r.begin(), r.end(), j,
                               [](const auto& e, std::size_t c) { return e.first < c; });
    if (it != r.end() && it->first == j) {
      if (sgn(v) == 0)
        r.erase(it);
      else
        it->second = v;
    } else if (sgn(v) != 0) {
      r.insert(it, {j, v});
    }
  }

  Vector dense_row(std::size_t i) const {
    Vector out(cols_);
    for (const auto& [j, v] : data_.at(i)) out[j] = v;
    return out;
  }

  Vector column(std::size_t j) const {
    Vector out(rows());
    for (std::size_t i = 0; i < rows(); ++i) out[i] = get(i, j);
    return out;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const {
    for (const auto& r : data_)
      if (!r.empty()) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i)
      for (const auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
    return t;
  }

  bool operator==(const Matrix& o) const { return cols_ == o.cols_ && data_ == o.data_; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matrix product shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      std::map<std::size_t, Scalar> acc;
      for (const auto& [k, av] : a.data_[i])
        for (const auto& [j, bv] : b.data_[k]) acc[j] += av * bv;
      for (auto& [j, v] : acc)
        if (sgn(v) != 0) out.data_[i].emplace_back(j, std::move(v));
    }
    return out;
  }

  friend Vector operator*(const Matrix& a, const Vector& x) {
    if (a.cols() != x.size()) throw DimensionError("matrix-vector shape mismatch");
    Vector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (const auto& [j, v] : a.data_[i]) out[i] += v * x[j];
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) { return combine(a, Scalar(1), b); }
  friend Matrix operator-(const Matrix& a, const Matrix& b) { return combine(a, Scalar(-1), b); }
  friend Matrix operator*(const Scalar& c, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    if (sgn(c) == 0) return out;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (const auto& [j, v] : a.data_[i]) out.data_[i].emplace_back(j, c * v);
    return out;
  }

  /// Stacks `blocks[i][j]` (nullptr = zero block) into one matrix.
  static Matrix block(const std::vector<std::size_t>& row_sizes, const std::vector<std::size_t>& col_sizes,
                      const std::vector<std::vector<const Matrix*>>& blocks) {
    std::size_t rows = 0, cols = 0;
    for (auto r : row_sizes) rows += r;
    std::vector<std::size_t> col_off;
    for (auto c : col_sizes) {
      col_off.push_back(cols);
      cols += c;
    }
    Matrix out(rows, cols);
    std::size_t row_off = 0;
    for (std::size_t bi = 0; bi < row_sizes.size(); ++bi) {
      for (std::size_t r = 0; r < row_sizes[bi]; ++r) {
        auto& dst = out.data_[row_off + r];
        for (std::size_t bj = 0; bj < col_sizes.size(); ++bj) {
          const Matrix* m = blocks[bi][bj];
          if (!m) continue;
          if (m->rows() != row_sizes[bi] || m->cols() != col_sizes[bj])
            throw DimensionError("block shape mismatch");
          for (const auto& [j, v] : m->data_[r]) dst.emplace_back(col_off[bj] + j, v);
        }
      }
      row_off += row_sizes[bi];
    }
    return out;
  }

 private:
  static Matrix combine(const Matrix& a, const Scalar& c, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("matrix sum shape mismatch");
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) out.data_[i] = detail::axpy(a.data_[i], c, b.data_[i]);
    return out;
  }

  std::size_t cols_ = 0;
  std::vector<SparseVec> data_;
};

/// Incremental Gaussian elimination over sparse rows. Pivot rows are kept
/// normalized (leading entry 1), which keeps denominators small in practice.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t cols) : cols_(cols) {}

  /// Reduces `row` against the current pivots; returns true if it was
  /// independent (and is now a pivot row).
  bool insert(SparseVec row) {
    row = reduce(std::move(row));
    if (row.empty()) return false;
    Scalar inv = 1 / row.front().second;
    for (auto& [j, v] : row) v *= inv;
    std::size_t lead = row.front().first;
    pivots_.emplace(lead, std::move(row));
    return true;
  }

  /// Eliminates pivot-column entries from `row` (full reduction, not only the lead).
  SparseVec reduce(SparseVec row) const {
    std::size_t pos = 0;
    while (pos < row.size()) {
      auto it = pivots_.find(row[pos].first);
      if (it == pivots_.end()) {
        ++pos;
        continue;
      }
      Scalar c = -row[pos].second;
      std::size_t col = row[pos].first;
      row = detail::axpy(row, c, it->second);
      // entries before `col` are unaffected because pivot rows start at `col`
      pos = std::lower_bound(row.begin(), row.end(), col,
                             [](const auto& e, std::size_t c2) { return e.first < c2; }) -
            row.begin();
    }
    return row;
  }

  std::size_t rank() const { return pivots_.size(); }
  std::size_t cols() const { return cols_; }

  /// Back-substitutes so each pivot column is zero outside its pivot row.
  void make_reduced() {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      std::size_t col = it->first;
      for (auto& [lead, row] : pivots_) {
        if (lead >= col) break;
        auto e = std::lower_bound(row.begin(), row.end(), col,
                                  [](const auto& x, std::size_t c2) { return x.first < c2; });
        if (e != row.end() && e->first == col) row = detail::axpy(row, -e->second, it->second);
      }
    }
  }

  const std::map<std::size_t, SparseVec>& pivots() const { return pivots_; }

 private:
  std::size_t cols_;
  std::map<std::size_t, SparseVec> pivots_;
};

/// Rank over the rationals.
inline std::size_t rank(const Matrix& m) {
  // rank(M) = rank(Mᵀ); eliminate along the shorter side
  if (m.rows() > m.cols() && m.cols() > 0) {
    Matrix t = m.transpose();
    RowEchelon e(t.cols());
    for (std::size_t i = 0; i < t.rows(); ++i) e.insert(t.row(i));
    return e.rank();
  }
  RowEchelon e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    e.insert(m.row(i));
    if (e.rank() == m.cols()) break;
  }
  return e.rank();
}

namespace detail {

inline std::vector<Vector> kernel_from_reduced(const RowEchelon& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (const auto& [lead, row] : e.pivots()) is_pivot[lead] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols);
    v[f] = 1;
    for (const auto& [lead, row] : e.pivots())
      for (const auto& [j, val] : row)
        if (j == f) v[lead] = -val;
    // leading nonzero normalized to 1
    for (const auto& x : v)
      if (sgn(x) != 0) {
        Scalar inv = 1 / x;
        for (auto& y : v) y *= inv;
        break;
      }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

/// Basis of the right null space; each vector has leading nonzero entry 1.
inline std::vector<Vector> kernel_basis(const Matrix& m) {
  RowEchelon e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  e.make_reduced();
  return detail::kernel_from_reduced(e, m.cols());
}

struct AffineSolution {
  Vector particular;
  std::vector<Vector> kernel;
};

/// Solves M x = b. Returns nothing if the system is inconsistent.
inline std::optional<AffineSolution> solve_affine(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw DimensionError("right-hand side length does not match rows");
  const std::size_t n = m.cols();
  RowEchelon e(n + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVec row = m.row(i);
    if (sgn(b[i]) != 0) row.emplace_back(n, b[i]);
    e.insert(std::move(row));
  }
  if (e.pivots().count(n)) return std::nullopt;
  e.make_reduced();
  AffineSolution sol;
  sol.particular.assign(n, Scalar(0));
  for (const auto& [lead, row] : e.pivots())
    if (!row.empty() && row.back().first == n) sol.particular[lead] = row.back().second;
  sol.kernel = kernel_basis(m);
  return sol;
}

/// For an inconsistent system M x = b, a vector y with yᵀM = 0 and yᵀb = 1.
inline std::optional<Vector> infeasibility_certificate(const Matrix& m, const Vector& b) {
  for (auto& y : kernel_basis(m.transpose())) {
    Scalar dot = 0;
    for (std::size_t i = 0; i < y.size(); ++i) dot += y[i] * b[i];
    if (sgn(dot) != 0) {
      Scalar inv = 1 / dot;
      for (auto& v : y) v *= inv;
      return y;
    }
  }
  return std::nullopt;
}

/// dim ker − rank im. A larger image than kernel means d∘d ≠ 0 upstream.
inline std::size_t quotient_dim(std::size_t kernel_dim, std::size_t image_rank) {
  if (image_rank > kernel_dim)
    throw ConsistencyError("image rank " + std::to_string(image_rank) + " exceeds kernel dimension " +
                           std::to_string(kernel_dim) + " (d∘d ≠ 0)");
  return kernel_dim - image_rank;
}

}  // namespace trilie

#endif  // TRILIE_LINALG_HPP
