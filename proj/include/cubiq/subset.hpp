#pragma once

// Combinatorial statistics of a subset S = {v_1, ..., v_m} of Z^n and the
// orthogonal / non-acute predicates.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubiq/errors.hpp"
#include "cubiq/lattice.hpp"
#include "cubiq/matrix.hpp"

namespace cubiq {

using IndexSet = std::vector<std::size_t>;

/// An ordered list of integer vectors of a common ambient dimension.
/// No independence is required until the subset is used as a basis.
class Subset {
 public:
  Subset() = default;

  /// `ambient` must be given when `vectors` is empty.
  explicit Subset(std::vector<Vector> vectors, std::size_t ambient = 0) : vectors_(std::move(vectors)) {
    dim_ = vectors_.empty() ? ambient : vectors_.front().size();
    for (const auto& v : vectors_) {
      if (v.size() != dim_) throw DimensionMismatch("subset vectors must share one dimension");
    }
  }

  Subset(std::initializer_list<Vector> vectors) : Subset(std::vector<Vector>(vectors)) {}

  /// The columns of `m`.
  static Subset from_columns(const IntMatrix& m) { return Subset(m.columns(), m.rows()); }
  static Subset from_basis(const BasisMatrix& b) { return from_columns(b.matrix()); }

  std::size_t size() const noexcept { return vectors_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return vectors_.empty(); }
  bool is_square() const noexcept { return vectors_.size() == dim_; }

  const Vector& operator[](std::size_t i) const { return vectors_[i]; }
  const std::vector<Vector>& vectors() const noexcept { return vectors_; }

  /// <v_i, e_j>
  std::int64_t entry(std::size_t i, std::size_t j) const { return vectors_[i][j]; }

  std::int64_t norm(std::size_t i) const { return dot(vectors_[i], vectors_[i]); }

  Vector norms() const {
    Vector a(size());
    for (std::size_t i = 0; i < size(); ++i) a[i] = norm(i);
    return a;
  }

  /// Column matrix [v_1 ... v_m].
  IntMatrix to_matrix() const { return IntMatrix::from_columns(vectors_, dim_); }

  BasisMatrix to_basis() const { return BasisMatrix(to_matrix()); }

  /// Vector `k` of the result is vector `order[k]` of this subset.
  Subset reordered(std::span<const std::size_t> order) const {
    if (order.size() != size()) throw DimensionMismatch("reorder: permutation has wrong length");
    std::vector<Vector> out;
    out.reserve(size());
    for (auto k : order) out.push_back(vectors_.at(k));
    return Subset(std::move(out), dim_);
  }

  Subset negated(std::size_t i) const {
    Subset out = *this;
    for (auto& x : out.vectors_.at(i)) x = -x;
    return out;
  }

  friend bool operator==(const Subset&, const Subset&) = default;

 private:
  std::vector<Vector> vectors_;
  std::size_t dim_ = 0;
};

inline IntMatrix gram(const Subset& s) { return gram(s.vectors()); }

/// Support data of a subset. Coordinate and vector indices are 0-based.
struct SubsetStats {
  /// E[j]: vectors with a nonzero j-th coordinate.
  std::vector<IndexSet> E;
  /// V[i]: coordinates where v_i is nonzero.
  std::vector<IndexSet> V;
  /// P[k]: coordinates j with |E[j]| = k, for k in [0, m].
  std::vector<IndexSet> P;
  /// p[k] = |P[k]|.
  std::vector<std::size_t> p;
  /// Q[k]: coordinates of P[k] where some vector has an entry of absolute
  /// value at least 2.
  std::vector<IndexSet> Q;
  /// I(S) = sum over vectors of (norm - 3).
  std::int64_t I = 0;

  std::size_t p_at(std::size_t k) const { return k < p.size() ? p[k] : 0; }
};

inline SubsetStats stats(const Subset& s) {
  const std::size_t m = s.size();
  const std::size_t n = s.dim();
  SubsetStats st;
  st.E.assign(n, {});
  st.V.assign(m, {});
  st.P.assign(m + 1, {});
  st.Q.assign(m + 1, {});
  st.p.assign(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (s.entry(i, j) != 0) {
        st.E[j].push_back(i);
        st.V[i].push_back(j);
      }
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = st.E[j].size();
    st.P[k].push_back(j);
    ++st.p[k];
    const bool large = std::any_of(st.E[j].begin(), st.E[j].end(),
                                   [&](std::size_t i) { return s.entry(i, j) >= 2 || s.entry(i, j) <= -2; });
    if (large) st.Q[k].push_back(j);
  }
  detail::Checked64 total = 0;
  for (std::size_t i = 0; i < m; ++i) total += detail::Checked64(s.norm(i)) - detail::Checked64(3);
  st.I = total.v;
  return st;
}

/// Both sides of the counting identity
///   2 p_1 + p_2 + I  =  sum_{j >= 4} (j - 3) p_j + sum_{<v_s,e_i> != 0} (<v_s,e_i>^2 - 1).
struct IdentitySides {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
};

inline IdentitySides identity_sides(const Subset& s) {
  const SubsetStats st = stats(s);
  IdentitySides out;
  out.lhs = 2 * static_cast<std::int64_t>(st.p_at(1)) + static_cast<std::int64_t>(st.p_at(2)) + st.I;
  detail::Checked64 rhs = 0;
  for (std::size_t j = 4; j < st.p.size(); ++j) {
    rhs += detail::Checked64(static_cast<std::int64_t>(j) - 3) * detail::Checked64(static_cast<std::int64_t>(st.p[j]));
  }
  for (const auto& v : s.vectors()) {
    for (auto x : v) {
      if (x != 0) rhs += detail::Checked64(x) * detail::Checked64(x) - detail::Checked64(1);
    }
  }
  out.rhs = rhs.v;
  return out;
}

/// Self-test of the counting identity. The identity counts every coordinate
/// once among p_1, ..., p_n, so it requires a square subset without an
/// all-zero coordinate.
inline bool check_identity(const Subset& s) {
  if (!s.is_square()) throw PreconditionFailed("check_identity: subset must have n vectors in Z^n");
  const SubsetStats st = stats(s);
  if (st.p_at(0) != 0) {
    throw PreconditionFailed("check_identity: p_0 = " + std::to_string(st.p_at(0)) + " (an all-zero coordinate)");
  }
  const auto sides = identity_sides(s);
  return sides.lhs == sides.rhs;
}

/// Pairwise orthogonal with every norm at least 1.
inline bool is_orthogonal(const Subset& s) {
  const IntMatrix g = gram(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (g(i, i) < 1) return false;
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g(i, j) != 0) return false;
    }
  }
  return true;
}

/// Norms at least 1, non-positive pairwise products, and each norm at least
/// the negated sum of the other products in its row.
inline bool is_non_acute(const Subset& s) {
  const IntMatrix g = gram(s);
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (g(i, i) < 1) return false;
    std::int64_t off = 0;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      if (g(i, j) > 0) return false;
      off = detail::checked_add(off, g(i, j));
    }
    if (g(i, i) < -off) return false;
  }
  return true;
}

}  // namespace cubiq
