#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "cubiq/errors.hpp"
#include "cubiq/integer.hpp"

namespace cubiq {

/// An integer vector of Z^n.
using Vector = std::vector<std::int64_t>;

/// Standard dot product, overflow-checked.
inline std::int64_t dot(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("dot product of vectors of length " + std::to_string(a.size()) + " and " +
                            std::to_string(b.size()));
  }
  detail::Checked64 acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += detail::Checked64(a[i]) * detail::Checked64(b[i]);
  return acc.v;
}

inline Vector unit_vector(std::size_t n, std::size_t i, std::int64_t scale = 1) {
  Vector e(n, 0);
  e.at(i) = scale;
  return e;
}

/// Dense row-major integer matrix. Column j is read as the j-th basis or
/// subset vector throughout the library.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Row-major literal: `IntMatrix{{1, -1}, {1, 1}}`.
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw DimensionMismatch("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix from_rows(const std::vector<Vector>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged row list");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  /// Columns given as vectors; `rows` is needed only when `cols` is empty.
  static IntMatrix from_columns(const std::vector<Vector>& cols, std::size_t rows = 0) {
    const std::size_t r = cols.empty() ? rows : cols.front().size();
    IntMatrix m(r, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != r) throw DimensionMismatch("columns of unequal length");
      for (std::size_t i = 0; i < r; ++i) m(i, j) = cols[j][i];
    }
    return m;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(std::span<const std::int64_t> d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vector row(std::size_t i) const { return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  std::vector<Vector> columns() const {
    std::vector<Vector> out;
    out.reserve(cols_);
    for (std::size_t j = 0; j < cols_; ++j) out.push_back(column(j));
    return out;
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Matrix-vector product, overflow-checked.
  Vector operator*(std::span<const std::int64_t> z) const {
    if (z.size() != cols_) throw DimensionMismatch("matrix-vector product dimension mismatch");
    Vector y(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      detail::Checked64 acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += detail::Checked64((*this)(i, j)) * detail::Checked64(z[j]);
      y[i] = acc.v;
    }
    return y;
  }

  /// Row `k` of the result is row `order[k]` of this matrix.
  IntMatrix permute_rows(std::span<const std::size_t> order) const {
    if (order.size() != rows_) throw DimensionMismatch("row permutation has wrong length");
    IntMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < rows_; ++k)
      for (std::size_t j = 0; j < cols_; ++j) m(k, j) = (*this)(order[k], j);
    return m;
  }

  std::span<const std::int64_t> data() const noexcept { return data_; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

}  // namespace cubiq
