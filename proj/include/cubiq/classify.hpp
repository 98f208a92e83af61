#pragma once

// Decision procedures for orthogonal sublattices: support-block
// decomposition and classification, the torus-link parameter rule, the 4x4
// determinant identity with its zero-solution table, and the two 8x8 blocks
// with p_4 = I = 8.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cubiq/errors.hpp"
#include "cubiq/lattice.hpp"
#include "cubiq/obstructions.hpp"
#include "cubiq/subset.hpp"

namespace cubiq {

enum class BlockKind { Unit, TwoTimes, Hyper2x2, Other };

constexpr std::string_view to_string(BlockKind k) {
  switch (k) {
    case BlockKind::Unit: return "Unit";
    case BlockKind::TwoTimes: return "TwoTimes";
    case BlockKind::Hyper2x2: return "Hyper2x2";
    case BlockKind::Other: return "Other";
  }
  return "?";
}

struct Block {
  IndexSet coordinates;
  IndexSet vectors;
  BlockKind kind = BlockKind::Other;
};

struct BlockDecomposition {
  std::vector<Block> blocks;
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

inline BlockKind classify_block(const Subset& s, const Block& b) {
  if (b.vectors.size() != b.coordinates.size()) return BlockKind::Other;
  if (b.vectors.size() == 1) {
    const auto x = s.entry(b.vectors[0], b.coordinates[0]);
    if (x == 1 || x == -1) return BlockKind::Unit;
    if (x == 2 || x == -2) return BlockKind::TwoTimes;
    return BlockKind::Other;
  }
  if (b.vectors.size() == 2) {
    // Entries all +-1 and the two vectors orthogonal is exactly a signed
    // coordinate permutation of {e_i + e_j, e_i - e_j}.
    for (auto v : b.vectors)
      for (auto c : b.coordinates) {
        const auto x = s.entry(v, c);
        if (x != 1 && x != -1) return BlockKind::Other;
      }
    if (dot(s[b.vectors[0]], s[b.vectors[1]]) == 0) return BlockKind::Hyper2x2;
  }
  return BlockKind::Other;
}

}  // namespace detail

/// Connected components of the bipartite vector/coordinate support graph.
/// Blocks are ordered by smallest coordinate; blocks without coordinates
/// (zero vectors) come last.
inline BlockDecomposition decompose(const Subset& s) {
  const std::size_t m = s.size();
  const std::size_t n = s.dim();
  detail::DisjointSets ds(m + n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (s.entry(i, j) != 0) ds.unite(i, m + j);

  std::vector<Block> blocks;
  std::vector<std::size_t> block_of_root(m + n, SIZE_MAX);
  auto block_for = [&](std::size_t node) -> Block& {
    const std::size_t r = ds.find(node);
    if (block_of_root[r] == SIZE_MAX) {
      block_of_root[r] = blocks.size();
      blocks.emplace_back();
    }
    return blocks[block_of_root[r]];
  };
  for (std::size_t j = 0; j < n; ++j) block_for(m + j).coordinates.push_back(j);
  for (std::size_t i = 0; i < m; ++i) block_for(i).vectors.push_back(i);

  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
    if (a.coordinates.empty() != b.coordinates.empty()) return b.coordinates.empty();
    if (a.coordinates.empty()) return a.vectors.front() < b.vectors.front();
    return a.coordinates.front() < b.coordinates.front();
  });
  for (auto& b : blocks) b.kind = detail::classify_block(s, b);
  return {std::move(blocks)};
}

/// The sub-basis of block `b` in its own coordinates.
inline Subset block_subset(const Subset& s, const Block& b) {
  std::vector<Vector> vs;
  for (auto v : b.vectors) {
    Vector x;
    for (auto c : b.coordinates) x.push_back(s.entry(v, c));
    vs.push_back(std::move(x));
  }
  return Subset(std::move(vs), b.coordinates.size());
}

struct OrthogonalClassification {
  BlockDecomposition decomposition;
  CubiquityVerdict verdict;
  /// First block that is not Unit, TwoTimes or Hyper2x2.
  std::optional<std::size_t> offending_block;
};

/// An orthogonal lattice is cubiquitous iff its blocks are all [±1], [±2]
/// or hyperbolic pairs. When a block fails and is small enough for the
/// brute-force budget, a witness cube is attached as a certificate.
inline OrthogonalClassification classify_orthogonal_detailed(const Subset& s, const Limits& limits = {}) {
  if (!s.is_square()) throw PreconditionFailed("classify_orthogonal: subset must have n vectors in Z^n");
  if (!is_orthogonal(s)) throw NotOrthogonal("classify_orthogonal: subset is not orthogonal");
  OrthogonalClassification out;
  out.decomposition = decompose(s);
  const auto& blocks = out.decomposition.blocks;
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].kind == BlockKind::Other) {
      out.offending_block = k;
      break;
    }
  }
  auto& v = out.verdict;
  if (!out.offending_block) {
    v.status = Status::Cubiquitous;
    v.reason = "every block is [±1], [±2] or a hyperbolic pair";
    return out;
  }
  v.status = Status::NotCubiquitous;
  v.reason = "block " + std::to_string(*out.offending_block + 1) + " is not [±1], [±2] or a hyperbolic pair";
  const Block& bad = blocks[*out.offending_block];
  try {
    const auto local = is_cubiquitous_bruteforce(block_subset(s, bad).to_basis(), limits);
    if (local.witness) {
      Vector x(s.dim(), 0);
      for (std::size_t k = 0; k < bad.coordinates.size(); ++k) x[bad.coordinates[k]] = (*local.witness)[k];
      v.witness = std::move(x);
    }
  } catch (const ResourceLimit&) {
  }
  return out;
}

inline CubiquityVerdict classify_orthogonal(const Subset& s, const Limits& limits = {}) {
  return classify_orthogonal_detailed(s, limits).verdict;
}

/// Connected sums of same-sign T(2, k_i) torus links: the double branched
/// cover bounds a rational ball iff every |k_i| is 1, 2 or 4 and an even
/// number of them equal 2. Works on magnitudes; signs must agree.
inline bool torus_sum_bounds_qball(std::span<const std::int64_t> k) {
  if (k.empty()) throw PreconditionFailed("torus: at least one parameter is required");
  bool any_pos = false;
  bool any_neg = false;
  for (auto x : k) {
    if (x == 0) throw ZeroParameter("torus: parameters must be nonzero");
    (x > 0 ? any_pos : any_neg) = true;
  }
  if (any_pos && any_neg) throw MixedSigns("torus: parameters must all have the same sign");
  std::size_t twos = 0;
  for (auto x : k) {
    const auto a = x < 0 ? -x : x;
    if (a != 1 && a != 2 && a != 4) return false;
    if (a == 2) ++twos;
  }
  return twos % 2 == 0;
}

/// The 4x4 matrix with diagonal (a, b, c, d) and every off-diagonal entry -1.
inline IntMatrix det4_matrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return IntMatrix{{a, -1, -1, -1}, {-1, b, -1, -1}, {-1, -1, c, -1}, {-1, -1, -1, d}};
}

/// Closed form of det(det4_matrix(a, b, c, d)).
inline std::int64_t det4_formula(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  using detail::Checked64;
  const Checked64 A(a), B(b), C(c), D(d);
  const Checked64 two(2), three(3);
  const Checked64 r = -two * A - A * B - two * B - A * C - B * C - two * C - A * D - B * D + A * B * C * D - C * D -
                      two * D - three;
  return r.v;
}

using Quad = std::array<std::int64_t, 4>;

/// Sorted tuples 1 <= a <= b <= c <= d <= bound with det4_formula = 0, in
/// lexicographic order.
inline std::vector<Quad> det4_zero_solutions(std::int64_t bound) {
  if (bound < 1) throw PreconditionFailed("det4_zero_solutions: bound must be at least 1");
  std::vector<Quad> out;
  for (std::int64_t a = 1; a <= bound; ++a)
    for (std::int64_t b = a; b <= bound; ++b)
      for (std::int64_t c = b; c <= bound; ++c)
        for (std::int64_t d = c; d <= bound; ++d)
          if (det4_formula(a, b, c, d) == 0) out.push_back({a, b, c, d});
  return out;
}

/// The two 8x8 orthogonal blocks with p_4 = I = 8 that are not settled by
/// the determinant criterion. Rows are coordinates, columns are vectors.
inline std::array<BasisMatrix, 2> catalog_blocks() {
  static const std::array<BasisMatrix, 2> blocks{
      BasisMatrix{{1, 1, 1, 1, 0, 0, 0, 0},
                  {1, -1, -1, -1, 0, 0, 0, 0},
                  {0, 1, -1, -1, 1, 0, 0, 0},
                  {0, -1, 1, 1, 1, 0, 0, 0},
                  {0, 0, 1, -1, 0, 1, 1, 0},
                  {0, 0, -1, 1, 0, 1, -1, 0},
                  {0, 0, 1, -1, 0, 0, -1, 1},
                  {0, 0, -1, 1, 0, 0, 1, 1}},
      BasisMatrix{{1, 1, 1, 1, 0, 0, 0, 0},
                  {1, -1, -1, -1, 0, 0, 0, 0},
                  {0, -1, 1, 0, 1, 1, 0, 0},
                  {0, 1, -1, 0, 1, -1, 0, 0},
                  {0, 1, 0, -1, 0, 1, 1, 0},
                  {0, -1, 0, 1, 0, -1, 1, 0},
                  {0, 0, -1, 1, 0, 1, 0, 1},
                  {0, 0, 1, -1, 0, -1, 0, 1}},
  };
  return blocks;
}

/// Base point of the unit cube shown to miss both catalog lattices.
inline Vector catalog_witness_cube() { return {-2, 1, 1, 1, 1, 1, 1, 1}; }

}  // namespace cubiq
