#pragma once

// Subset rewrites: projections and double projections of orthogonal subsets,
// the reduction they generate, and contractions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubiq/errors.hpp"
#include "cubiq/obstructions.hpp"
#include "cubiq/subset.hpp"

namespace cubiq {

struct RewriteStep {
  enum class Kind { Projection, DoubleProjection, Contraction };

  Kind kind = Kind::Projection;
  /// Coordinates deleted, indexed in the step's input subset.
  IndexSet coordinates;
  /// Vectors removed or rewritten, indexed in the step's input subset.
  /// Contractions list (s, t, u).
  IndexSet vectors;
  Subset result;
};

constexpr std::string_view to_string(RewriteStep::Kind k) {
  switch (k) {
    case RewriteStep::Kind::Projection: return "Projection";
    case RewriteStep::Kind::DoubleProjection: return "DoubleProjection";
    case RewriteStep::Kind::Contraction: return "Contraction";
  }
  return "?";
}

namespace detail {

/// Drops the listed vectors and coordinates; survivors keep their relative
/// order and coordinates are relabelled downward.
inline Subset drop(const Subset& s, const IndexSet& vectors, const IndexSet& coords) {
  auto listed = [](const IndexSet& set, std::size_t k) { return std::find(set.begin(), set.end(), k) != set.end(); };
  std::vector<Vector> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (listed(vectors, i)) continue;
    Vector v;
    for (std::size_t j = 0; j < s.dim(); ++j)
      if (!listed(coords, j)) v.push_back(s.entry(i, j));
    out.push_back(std::move(v));
  }
  std::size_t kept_dim = 0;
  for (std::size_t j = 0; j < s.dim(); ++j)
    if (!listed(coords, j)) ++kept_dim;
  return Subset(std::move(out), kept_dim);
}

inline void require_orthogonal(const Subset& s, const char* op) {
  if (!is_orthogonal(s)) throw NotOrthogonal(std::string(op) + ": subset is not orthogonal");
}

inline bool unit_entry(std::int64_t x) { return x == 1 || x == -1; }

/// For i in P_2 \ Q_2 with E_i = {s, t} where both vectors are ±e_i ± e_j,
/// returns j.
inline std::optional<std::size_t> hyperbolic_partner(const Subset& s, const SubsetStats& st, std::size_t i) {
  if (st.E[i].size() != 2) return std::nullopt;
  const std::size_t a = st.E[i][0];
  const std::size_t b = st.E[i][1];
  if (st.V[a].size() != 2 || st.V[a] != st.V[b]) return std::nullopt;
  const std::size_t j = st.V[a][0] == i ? st.V[a][1] : st.V[a][0];
  for (auto v : {a, b})
    for (auto c : {i, j})
      if (!unit_entry(s.entry(v, c))) return std::nullopt;
  return j;
}

}  // namespace detail

/// Removes v_s, which must be supported on a single coordinate i, and
/// deletes coordinate i.
inline Subset project(const Subset& s, std::size_t vec) {
  detail::require_orthogonal(s, "project");
  if (vec >= s.size()) throw PreconditionFailed("project: vector index out of range");
  const SubsetStats st = stats(s);
  if (st.V[vec].size() != 1) {
    throw PreconditionFailed("project: |V_s| = " + std::to_string(st.V[vec].size()) + ", expected 1");
  }
  return detail::drop(s, {vec}, {st.V[vec][0]});
}

/// Removes the pair e_i + e_j, e_i - e_j (up to signs) meeting coordinate i
/// and deletes coordinates i and j.
inline Subset double_project(const Subset& s, std::size_t coord) {
  detail::require_orthogonal(s, "double_project");
  if (coord >= s.dim()) throw PreconditionFailed("double_project: coordinate index out of range");
  const SubsetStats st = stats(s);
  if (st.E[coord].size() != 2) {
    throw PreconditionFailed("double_project: |E_i| = " + std::to_string(st.E[coord].size()) + ", expected 2");
  }
  if (std::find(st.Q[2].begin(), st.Q[2].end(), coord) != st.Q[2].end()) {
    throw PreconditionFailed("double_project: i lies in Q_2 (an entry of absolute value >= 2)");
  }
  const auto partner = detail::hyperbolic_partner(s, st, coord);
  if (!partner) throw PreconditionFailed("double_project: the vectors of E_i are not of the form e_i +- e_j");
  IndexSet coords{coord, *partner};
  std::sort(coords.begin(), coords.end());
  return detail::drop(s, st.E[coord], coords);
}

/// Applies projections (lowest vector index first) until none applies, then
/// one double projection (lowest coordinate first), and repeats. Returns the
/// step log; the last step's result, or `s` itself when empty, is the
/// reduced subset.
inline std::vector<RewriteStep> reduce_steps(const Subset& s) {
  detail::require_orthogonal(s, "reduce");
  std::vector<RewriteStep> steps;
  Subset cur = s;
  for (;;) {
    const SubsetStats st = stats(cur);
    bool applied = false;
    for (std::size_t v = 0; v < cur.size() && !applied; ++v) {
      if (st.V[v].size() != 1) continue;
      Subset next = project(cur, v);
      steps.push_back({RewriteStep::Kind::Projection, {st.V[v][0]}, {v}, next});
      cur = std::move(next);
      applied = true;
    }
    for (std::size_t i = 0; i < cur.dim() && !applied; ++i) {
      if (st.E[i].size() != 2) continue;
      if (std::find(st.Q[2].begin(), st.Q[2].end(), i) != st.Q[2].end()) continue;
      const auto j = detail::hyperbolic_partner(cur, st, i);
      if (!j) continue;
      IndexSet coords{i, *j};
      std::sort(coords.begin(), coords.end());
      Subset next = double_project(cur, i);
      steps.push_back({RewriteStep::Kind::DoubleProjection, coords, st.E[i], next});
      cur = std::move(next);
      applied = true;
    }
    if (!applied) return steps;
  }
}

inline Subset reduce(const Subset& s) {
  const auto steps = reduce_steps(s);
  return steps.empty() ? s : steps.back().result;
}

/// Coordinate i and vectors (s, t, u) of a contraction.
struct ContractionSite {
  std::size_t coordinate = 0;
  std::size_t s = 0;
  std::size_t t = 0;
  std::size_t u = 0;

  friend bool operator==(const ContractionSite&, const ContractionSite&) = default;
};

namespace detail {

/// Empty when the site is valid, otherwise the first violated clause.
inline std::string contraction_violation(const Subset& S, const ContractionSite& c) {
  const std::size_t i = c.coordinate;
  if (S.dim() < 3 || S.size() < 3) return "need at least three vectors in Z^n, n >= 3";
  if (i >= S.dim()) return "coordinate index out of range";
  if (c.s >= S.size() || c.t >= S.size() || c.u >= S.size()) return "vector index out of range";
  if (c.s == c.t || c.s == c.u || c.t == c.u) return "s, t, u must be distinct";
  IndexSet support;
  for (std::size_t k = 0; k < S.size(); ++k)
    if (S.entry(k, i) != 0) support.push_back(k);
  IndexSet expected{c.s, c.t, c.u};
  std::sort(expected.begin(), expected.end());
  if (support != expected) return "E_i != {s, t, u}";
  if (dot(S[c.s], S[c.t]) != -1) return "<v_s, v_t> != -1";
  if (!unit_entry(S.entry(c.s, i)) || S.entry(c.s, i) != -S.entry(c.t, i)) return "<v_s, e_i> != -<v_t, e_i> = +-1";
  if (!unit_entry(S.entry(c.u, i))) return "|<v_u, e_i>| != 1";
  if (S.norm(c.u) < 3) return "a_u < 3";
  return {};
}

}  // namespace detail

/// Replaces v_s by v_s + v_t, drops v_t, replaces v_u by
/// v_u - <v_u, e_i> e_i, and deletes coordinate i.
inline Subset contract(const Subset& S, const ContractionSite& c) {
  if (auto why = detail::contraction_violation(S, c); !why.empty()) {
    throw PreconditionFailed("contract: " + why);
  }
  std::vector<Vector> vs = S.vectors();
  for (std::size_t j = 0; j < S.dim(); ++j) vs[c.s][j] = detail::checked_add(vs[c.s][j], vs[c.t][j]);
  vs[c.u][c.coordinate] = 0;
  return detail::drop(Subset(std::move(vs), S.dim()), {c.t}, {c.coordinate});
}

inline RewriteStep contraction_step(const Subset& S, const ContractionSite& c) {
  return {RewriteStep::Kind::Contraction, {c.coordinate}, {c.s, c.t, c.u}, contract(S, c)};
}

/// Every valid contraction site, ordered by (coordinate, s, t, u).
inline std::vector<ContractionSite> contraction_sites(const Subset& S) {
  std::vector<ContractionSite> out;
  if (S.dim() < 3) return out;
  for (std::size_t i = 0; i < S.dim(); ++i) {
    IndexSet E;
    for (std::size_t k = 0; k < S.size(); ++k)
      if (S.entry(k, i) != 0) E.push_back(k);
    if (E.size() != 3) continue;
    for (auto s : E)
      for (auto t : E)
        for (auto u : E) {
          const ContractionSite c{i, s, t, u};
          if (detail::contraction_violation(S, c).empty()) out.push_back(c);
        }
  }
  return out;
}

/// Compares the Wu inequality before and after contracting. Evaluated on the
/// raw inequality, so it is meaningful whether or not either side is
/// non-acute; when both are, it is exactly equality of wu_obstruction.
inline bool wu_preserved(const Subset& S, const ContractionSite& c) {
  const Subset T = contract(S, c);
  return wu_inequality(S).holds() == wu_inequality(T).holds();
}

}  // namespace cubiq
