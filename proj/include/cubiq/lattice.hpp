#pragma once

// Exact integer linear algebra over Z: determinants, column-style Hermite
// normal form, lattice membership, coset enumeration and direct sums.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cubiq/errors.hpp"
#include "cubiq/integer.hpp"
#include "cubiq/matrix.hpp"

namespace cubiq {

/// Budgets for the enumeration and search procedures.
struct Limits {
  /// Maximum number of coset representatives (coset_reps) or of cube-vertex
  /// membership solves, |det B| * 2^n (brute-force oracle).
  std::uint64_t resource_cap = std::uint64_t{1} << 24;
  /// Largest dimension for which the Hajós search tries all n! row orders.
  std::size_t permutation_cap = 8;
  /// Worker threads for the brute-force oracle.
  unsigned workers = 1;
};

namespace detail {

template <typename Int>
std::vector<Int> to_dense(const IntMatrix& m) {
  std::vector<Int> a;
  a.reserve(m.rows() * m.cols());
  for (auto x : m.data()) a.emplace_back(Int(x));
  return a;
}

/// Fraction-free (Bareiss) elimination with row pivoting. Every division
/// is exact.
template <typename Int>
Int bareiss_det(std::vector<Int> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * n + j]; };
  Int sign(1);
  Int prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    if (at(k, k) == Int(0)) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == Int(0)) ++p;
      if (p == n) return Int(0);
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      }
      at(i, k) = Int(0);
    }
    prev = at(k, k);
  }
  return n == 0 ? Int(1) : sign * at(n - 1, n - 1);
}

/// Returns (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g.
template <typename Int>
std::tuple<Int, Int, Int> ext_gcd(Int a, Int b) {
  Int x0(1), y0(0), x1(0), y1(1);
  while (b != Int(0)) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < Int(0)) return {-a, -x0, -y0};
  return {a, x0, y0};
}

/// Column-style HNF of a full-rank square matrix: lower triangular, positive
/// diagonal, entries left of the diagonal in [0, H_ii). Only unimodular
/// column operations are applied.
template <typename Int>
std::vector<Int> hnf_columns(std::vector<Int> a, std::size_t n) {
  auto at = [&](std::size_t i, std::size_t j) -> Int& { return a[i * n + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (at(i, j) == Int(0)) continue;
      if (at(i, i) == Int(0)) {
        for (std::size_t r = i; r < n; ++r) std::swap(at(r, i), at(r, j));
        continue;
      }
      auto [g, x, y] = ext_gcd(at(i, i), at(i, j));
      const Int p = at(i, i) / g;
      const Int q = at(i, j) / g;
      // [col_i col_j] <- [col_i col_j] * [[x, -q], [y, p]], determinant 1.
      for (std::size_t r = i; r < n; ++r) {
        const Int ci = at(r, i);
        const Int cj = at(r, j);
        at(r, i) = x * ci + y * cj;
        at(r, j) = p * cj - q * ci;
      }
    }
    if (at(i, i) == Int(0)) throw SingularMatrix("hnf: matrix is not full rank");
    if (at(i, i) < Int(0)) {
      for (std::size_t r = i; r < n; ++r) at(r, i) = -at(r, i);
    }
    for (std::size_t j = 0; j < i; ++j) {
      const Int q = floor_div(at(i, j), at(i, i));
      if (q == Int(0)) continue;
      for (std::size_t r = i; r < n; ++r) at(r, j) = at(r, j) - q * at(r, i);
    }
  }
  return a;
}

/// Reduces x against a lower-triangular HNF. With `exact`, returns false at
/// the first coordinate that cannot be cleared (membership test); otherwise
/// leaves the canonical representative in the box prod [0, H_ii).
template <typename Int>
bool reduce_against_hnf(const IntMatrix& h, std::vector<Int>& x, bool exact) {
  const std::size_t n = h.rows();
  for (std::size_t i = 0; i < n; ++i) {
    const Int d(h(i, i));
    Int q;
    if (exact) {
      if (x[i] % d != Int(0)) return false;
      q = x[i] / d;
    } else {
      q = floor_div(x[i], d);
    }
    if (q == Int(0)) continue;
    for (std::size_t r = i; r < n; ++r) x[r] = x[r] - q * Int(h(r, i));
  }
  return true;
}

}  // namespace detail

/// Exact determinant of a square matrix.
inline Integer det(const IntMatrix& m) {
  if (!m.is_square()) throw DimensionMismatch("determinant of a non-square matrix");
  try {
    return detail::to_integer(detail::bareiss_det(detail::to_dense<detail::Checked64>(m), m.rows()));
  } catch (const detail::Overflow&) {
    return detail::bareiss_det(detail::to_dense<Integer>(m), m.rows());
  }
}

/// A full-rank square integer matrix whose columns are a basis of a
/// sublattice of Z^n.
class BasisMatrix {
 public:
  explicit BasisMatrix(IntMatrix m) : m_(std::move(m)) {
    if (!m_.is_square()) {
      throw DimensionMismatch("basis matrix must be square, got " + std::to_string(m_.rows()) + "x" +
                              std::to_string(m_.cols()));
    }
    if (m_.rows() == 0) throw DimensionMismatch("basis matrix must have positive dimension");
    det_ = cubiq::det(m_);
    if (det_ == 0) throw SingularMatrix("basis matrix is not full rank (determinant 0)");
  }

  /// Row-major literal; columns are the basis vectors.
  BasisMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) : BasisMatrix(IntMatrix(rows)) {}

  static BasisMatrix from_columns(const std::vector<Vector>& cols) { return BasisMatrix(IntMatrix::from_columns(cols)); }

  std::size_t dim() const noexcept { return m_.rows(); }
  const IntMatrix& matrix() const noexcept { return m_; }
  const Integer& det() const noexcept { return det_; }
  Integer abs_det() const { return det_ < 0 ? Integer(-det_) : det_; }
  Vector column(std::size_t j) const { return m_.column(j); }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend bool operator==(const BasisMatrix& a, const BasisMatrix& b) { return a.m_ == b.m_; }

 private:
  IntMatrix m_;
  Integer det_;
};

inline Integer det(const BasisMatrix& b) { return b.det(); }

/// Column-style Hermite normal form. Unique for a fixed row order.
inline BasisMatrix hnf(const BasisMatrix& b) {
  const std::size_t n = b.dim();
  IntMatrix out(n, n);
  try {
    auto h = detail::hnf_columns(detail::to_dense<detail::Checked64>(b.matrix()), n);
    for (std::size_t k = 0; k < h.size(); ++k) out(k / n, k % n) = h[k].v;
  } catch (const detail::Overflow&) {
    auto h = detail::hnf_columns(detail::to_dense<Integer>(b.matrix()), n);
    for (std::size_t k = 0; k < h.size(); ++k) out(k / n, k % n) = detail::to_int64(h[k]);
  }
  return BasisMatrix(std::move(out));
}

inline bool is_hnf(const IntMatrix& h) {
  if (!h.is_square()) return false;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (h(i, i) <= 0) return false;
    for (std::size_t j = 0; j < h.cols(); ++j) {
      if (j > i && h(i, j) != 0) return false;
      if (j < i && (h(i, j) < 0 || h(i, j) >= h(i, i))) return false;
    }
  }
  return true;
}

/// Membership and coset reduction against a precomputed HNF.
class LatticeMembership {
 public:
  explicit LatticeMembership(const BasisMatrix& b) : h_(hnf(b).matrix()) {}

  std::size_t dim() const noexcept { return h_.rows(); }
  const IntMatrix& hnf_matrix() const noexcept { return h_; }

  bool contains(std::span<const std::int64_t> x) const {
    check_dim(x);
    try {
      std::vector<detail::Checked64> y(x.begin(), x.end());
      if (!detail::reduce_against_hnf(h_, y, true)) return false;
      for (auto v : y)
        if (v.v != 0) return false;
      return true;
    } catch (const detail::Overflow&) {
      std::vector<Integer> y(x.begin(), x.end());
      if (!detail::reduce_against_hnf(h_, y, true)) return false;
      for (const auto& v : y)
        if (v != 0) return false;
      return true;
    }
  }

  /// Canonical coset representative of x: the unique point of x + Λ in the
  /// box prod [0, H_ii).
  Vector reduce(std::span<const std::int64_t> x) const {
    check_dim(x);
    try {
      std::vector<detail::Checked64> y(x.begin(), x.end());
      detail::reduce_against_hnf(h_, y, false);
      Vector out(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) out[i] = y[i].v;
      return out;
    } catch (const detail::Overflow&) {
      std::vector<Integer> y(x.begin(), x.end());
      detail::reduce_against_hnf(h_, y, false);
      Vector out(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) out[i] = detail::to_int64(y[i]);
      return out;
    }
  }

 private:
  void check_dim(std::span<const std::int64_t> x) const {
    if (x.size() != h_.rows()) {
      throw DimensionMismatch("vector of length " + std::to_string(x.size()) + " tested against a lattice in Z^" +
                              std::to_string(h_.rows()));
    }
  }

  IntMatrix h_;
};

/// True iff x lies in the lattice spanned by the columns of b.
inline bool contains(const BasisMatrix& b, std::span<const std::int64_t> x) {
  return LatticeMembership(b).contains(x);
}

/// Complete system of representatives of Z^n / Λ.
struct CosetSystem {
  std::vector<Vector> reps;
  std::uint64_t order = 0;
};

namespace detail {

/// Mixed-radix enumeration of the HNF box in lexicographic order (last
/// coordinate varies fastest).
class CosetBox {
 public:
  explicit CosetBox(const IntMatrix& h) {
    radix_.reserve(h.rows());
    for (std::size_t i = 0; i < h.rows(); ++i) radix_.push_back(h(i, i));
  }

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (auto r : radix_) s *= static_cast<std::uint64_t>(r);
    return s;
  }

  Vector at(std::uint64_t index) const {
    Vector x(radix_.size(), 0);
    for (std::size_t i = radix_.size(); i-- > 0;) {
      const auto r = static_cast<std::uint64_t>(radix_[i]);
      x[i] = static_cast<std::int64_t>(index % r);
      index /= r;
    }
    return x;
  }

  /// Advances x to the next box point; returns false after the last one.
  bool next(Vector& x) const {
    for (std::size_t i = radix_.size(); i-- > 0;) {
      if (++x[i] < radix_[i]) return true;
      x[i] = 0;
    }
    return false;
  }

 private:
  Vector radix_;
};

inline std::uint64_t capped_index(const BasisMatrix& b, std::uint64_t cap, const char* what) {
  const Integer d = b.abs_det();
  if (d > Integer(cap)) {
    throw ResourceLimit(std::string(what) + ": |det B| = " + d.str() + " exceeds the resource cap " +
                        std::to_string(cap));
  }
  return static_cast<std::uint64_t>(d);
}

}  // namespace detail

/// Coset representatives from the HNF box, in lexicographic order.
inline CosetSystem coset_reps(const BasisMatrix& b, const Limits& limits = {}) {
  const std::uint64_t order = detail::capped_index(b, limits.resource_cap, "coset_reps");
  const BasisMatrix h = hnf(b);
  const detail::CosetBox box(h.matrix());
  CosetSystem out;
  out.order = order;
  out.reps.reserve(order);
  Vector x(b.dim(), 0);
  do {
    out.reps.push_back(x);
  } while (box.next(x));
  return out;
}

/// Gram matrix of a list of equal-length vectors.
inline IntMatrix gram(const std::vector<Vector>& vs) {
  IntMatrix g(vs.size(), vs.size());
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i; j < vs.size(); ++j) {
      g(i, j) = g(j, i) = dot(vs[i], vs[j]);
    }
  }
  return g;
}

inline IntMatrix gram(const BasisMatrix& b) { return gram(b.matrix().columns()); }

/// Block-diagonal sum: the first summand occupies the leading coordinates.
inline BasisMatrix direct_sum(const BasisMatrix& a, const BasisMatrix& b) {
  const std::size_t m = a.dim();
  const std::size_t n = b.dim();
  IntMatrix s(m + n, m + n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) s(m + i, m + j) = b(i, j);
  return BasisMatrix(std::move(s));
}

}  // namespace cubiq
