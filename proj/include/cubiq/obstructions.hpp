#pragma once

// Cubiquity verdicts: the Wu obstruction and its orthogonal form, the
// determinant / Hajós criteria, and the brute-force cube oracle.
//
// A lattice Λ ⊂ Z^n is cubiquitous when every unit cube x + {0,1}^n,
// x ∈ Z^n, contains a point of Λ.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "cubiq/errors.hpp"
#include "cubiq/integer.hpp"
#include "cubiq/lattice.hpp"
#include "cubiq/matrix.hpp"
#include "cubiq/subset.hpp"

namespace cubiq {

/// The Wu element W = v_1 + ... + v_m with its coordinates k_j split by
/// parity. Index sets are 0-based coordinates.
struct WuData {
  Vector W;
  /// R_o: k_j odd.
  IndexSet odd;
  /// R_e: k_j even and nonzero.
  IndexSet even;
  /// O: k_j = 0.
  IndexSet zero;
};

inline WuData wu_element(const Subset& s) {
  WuData w;
  w.W.assign(s.dim(), 0);
  for (const auto& v : s.vectors())
    for (std::size_t j = 0; j < s.dim(); ++j) w.W[j] = detail::checked_add(w.W[j], v[j]);
  for (std::size_t j = 0; j < s.dim(); ++j) {
    const auto k = w.W[j];
    if (k == 0) {
      w.zero.push_back(j);
    } else if (k % 2 != 0) {
      w.odd.push_back(j);
    } else {
      w.even.push_back(j);
    }
  }
  return w;
}

enum class Status { Cubiquitous, NotCubiquitous, Obstructed, Inconclusive };

constexpr std::string_view to_string(Status s) {
  switch (s) {
    case Status::Cubiquitous: return "Cubiquitous";
    case Status::NotCubiquitous: return "NotCubiquitous";
    case Status::Obstructed: return "Obstructed";
    case Status::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// True for the two statuses that prove the lattice is not cubiquitous.
constexpr bool refutes_cubiquity(Status s) { return s == Status::NotCubiquitous || s == Status::Obstructed; }

/// Two sides of an obstruction inequality lhs > rhs.
struct Inequality {
  Integer lhs;
  Integer rhs;
  bool holds() const { return lhs > rhs; }
};

/// A Hajós basis together with the coordinate order it lives in: row k of
/// `basis` is coordinate `row_order[k]` of the input.
struct HajosBasis {
  IntMatrix basis;
  std::vector<std::size_t> row_order;
};

struct CubiquityVerdict {
  Status status = Status::Inconclusive;
  /// NotCubiquitous: base point x of a cube x + {0,1}^n missing the lattice.
  std::optional<Vector> witness;
  /// Obstructed: the inequality that fired (also reported when it did not).
  std::optional<Inequality> inequality;
  /// Cubiquitous via the determinant criterion.
  std::optional<HajosBasis> hajos;
  std::string reason;
};

/// Σ k_j^2 against 4n - 3|R_o|, evaluated without any precondition.
inline Inequality wu_inequality(const Subset& s) {
  const WuData w = wu_element(s);
  Integer sum = 0;
  for (auto k : w.W) sum += Integer(k) * k;
  return {sum, Integer(4) * s.dim() - Integer(3) * w.odd.size()};
}

/// Wu obstruction for a non-acute basis. One-directional: never returns
/// Cubiquitous.
inline CubiquityVerdict wu_obstruction(const Subset& s) {
  if (!s.is_square()) throw PreconditionFailed("wu_obstruction: subset must have n vectors in Z^n");
  if (!is_non_acute(s)) throw NotNonAcute("wu_obstruction: subset is not non-acute");
  CubiquityVerdict v;
  v.inequality = wu_inequality(s);
  if (v.inequality->holds()) {
    v.status = Status::Obstructed;
    v.reason = "Wu obstruction: sum k_i^2 > 4n - 3|R_o|";
  } else {
    v.status = Status::Inconclusive;
    v.reason = "Wu obstruction does not apply";
  }
  return v;
}

/// Orthogonal form of the Wu obstruction: I(S) > n - 3|R_o|.
inline CubiquityVerdict wu_obstruction_orthogonal(const Subset& s) {
  if (!s.is_square()) throw PreconditionFailed("wu_obstruction_orthogonal: subset must have n vectors in Z^n");
  if (!is_orthogonal(s)) throw NotOrthogonal("wu_obstruction_orthogonal: subset is not orthogonal");
  const WuData w = wu_element(s);
  CubiquityVerdict v;
  v.inequality = Inequality{Integer(stats(s).I), Integer(s.dim()) - Integer(3) * w.odd.size()};
  if (v.inequality->holds()) {
    v.status = Status::Obstructed;
    v.reason = "Wu obstruction (orthogonal): I(S) > n - 3|R_o|";
  } else {
    v.status = Status::Inconclusive;
    v.reason = "Wu obstruction does not apply";
  }
  return v;
}

namespace detail {

inline Integer pow2(std::size_t n) { return Integer(1) << n; }

/// Does some vertex of x + {0,1}^n lie in the lattice?
inline bool cube_hits(const LatticeMembership& mem, const Vector& x) {
  const std::size_t n = x.size();
  Vector y(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + static_cast<std::int64_t>((mask >> (n - 1 - i)) & 1U);
    if (mem.contains(y)) return true;
  }
  return false;
}

}  // namespace detail

/// Decides cubiquity by checking the cube at every coset representative.
/// The witness is the lexicographically first failing HNF-box point,
/// independent of the worker count.
inline CubiquityVerdict is_cubiquitous_bruteforce(const BasisMatrix& b, const Limits& limits = {}) {
  const std::size_t n = b.dim();
  const Integer work = b.abs_det() * detail::pow2(n);
  if (n >= 63 || work > Integer(limits.resource_cap)) {
    throw ResourceLimit("brute force: |det B| * 2^n = " + work.str() + " exceeds the resource cap " +
                        std::to_string(limits.resource_cap));
  }
  const LatticeMembership mem(b);
  const detail::CosetBox box(mem.hnf_matrix());
  const std::uint64_t total = box.size();

  std::atomic<std::uint64_t> first_failure{total};
  auto scan = [&](std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return;
    Vector x = box.at(lo);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      if (idx >= first_failure.load(std::memory_order_relaxed)) return;
      if (!detail::cube_hits(mem, x)) {
        std::uint64_t cur = first_failure.load();
        while (idx < cur && !first_failure.compare_exchange_weak(cur, idx)) {
        }
        return;
      }
      box.next(x);
    }
  };

  const std::uint64_t workers = std::clamp<std::uint64_t>(limits.workers, 1, std::max<std::uint64_t>(total, 1));
  if (workers == 1) {
    scan(0, total);
  } else {
    const std::uint64_t chunk = (total + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) {
      pool.emplace_back(scan, w * chunk, std::min(total, (w + 1) * chunk));
    }
  }

  CubiquityVerdict v;
  if (first_failure.load() == total) {
    v.status = Status::Cubiquitous;
    v.reason = "every coset representative's unit cube meets the lattice";
  } else {
    v.status = Status::NotCubiquitous;
    v.witness = box.at(first_failure.load());
    v.reason = "unit cube at the witness contains no lattice point";
  }
  return v;
}

/// Searches row orders for one whose HNF has every diagonal entry 2 (its
/// sub-diagonal entries are then 0 or 1). Absent unless |det B| = 2^n.
inline std::optional<HajosBasis> hajos_basis(const BasisMatrix& b, const Limits& limits = {}) {
  const std::size_t n = b.dim();
  if (b.abs_det() != detail::pow2(n)) return std::nullopt;
  if (n > limits.permutation_cap) {
    throw ResourceLimit("hajos_basis: dimension " + std::to_string(n) + " exceeds the permutation-search cap " +
                        std::to_string(limits.permutation_cap));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  do {
    const BasisMatrix h = hnf(BasisMatrix(b.matrix().permute_rows(order)));
    bool all_two = true;
    for (std::size_t i = 0; i < n && all_two; ++i) all_two = h(i, i) == 2;
    if (all_two) return HajosBasis{h.matrix(), order};
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

/// Determinant criterion: |det B| > 2^n refutes cubiquity; |det B| = 2^n
/// decides it through the Hajós search; smaller determinants are left open.
inline CubiquityVerdict det_gate(const BasisMatrix& b, const Limits& limits = {}) {
  const Integer d = b.abs_det();
  const Integer bound = detail::pow2(b.dim());
  CubiquityVerdict v;
  v.inequality = Inequality{d, bound};
  if (d > bound) {
    v.status = Status::Obstructed;
    v.reason = "|det B| > 2^n";
  } else if (d == bound) {
    v.hajos = hajos_basis(b, limits);
    if (v.hajos) {
      v.status = Status::Cubiquitous;
      v.reason = "|det B| = 2^n and a Hajós basis exists";
    } else {
      v.status = Status::Obstructed;
      v.reason = "|det B| = 2^n and no row order admits a Hajós basis";
    }
  } else {
    v.status = Status::Inconclusive;
    v.reason = "|det B| < 2^n";
  }
  return v;
}

}  // namespace cubiq
