#pragma once

// Text matrix format and JSON serialization.
//
// Matrix text format: lines starting with '#' are comments, blank lines are
// ignored; the first data line holds n, followed by n rows of n
// whitespace-separated integers (row-major). Columns are basis vectors.
//
// JSON index sets are 1-based, matching the usual v_1..v_n / e_1..e_n
// labelling; the C++ API is 0-based.

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "cubiq/classify.hpp"
#include "cubiq/errors.hpp"
#include "cubiq/lattice.hpp"
#include "cubiq/matrix.hpp"
#include "cubiq/obstructions.hpp"
#include "cubiq/subset.hpp"
#include "cubiq/transforms.hpp"

namespace cubiq {

using Json = nlohmann::ordered_json;

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::int64_t parse_int(std::string_view tok) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec == std::errc::result_out_of_range) throw ParseError("integer out of range: '" + std::string(tok) + "'");
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    throw ParseError("not an integer: '" + std::string(tok) + "'");
  }
  return v;
}

inline std::vector<std::int64_t> parse_ints(std::string_view line) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') ++end;
    out.push_back(parse_int(line.substr(pos, end - pos)));
    pos = end;
  }
  return out;
}

}  // namespace detail

/// Reads the text matrix format. Throws ParseError on malformed input.
inline IntMatrix parse_matrix(std::istream& in, bool rows_as_vectors = false) {
  std::vector<std::vector<std::int64_t>> data_lines;
  std::string line;
  std::size_t lineno = 0;
  std::size_t n = 0;
  bool have_n = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    std::vector<std::int64_t> ints;
    try {
      ints = detail::parse_ints(t);
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!have_n) {
      if (ints.size() != 1 || ints[0] < 1) {
        throw ParseError("line " + std::to_string(lineno) + ": expected the dimension n >= 1");
      }
      n = static_cast<std::size_t>(ints[0]);
      have_n = true;
      continue;
    }
    if (data_lines.size() == n) throw ParseError("line " + std::to_string(lineno) + ": more than n rows");
    if (ints.size() != n) {
      throw ParseError("line " + std::to_string(lineno) + ": expected " + std::to_string(n) + " entries, got " +
                       std::to_string(ints.size()));
    }
    data_lines.push_back(std::move(ints));
  }
  if (!have_n) throw ParseError("empty matrix input");
  if (data_lines.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " rows, got " + std::to_string(data_lines.size()));
  }
  IntMatrix m = IntMatrix::from_rows(data_lines);
  return rows_as_vectors ? m.transposed() : m;
}

inline IntMatrix parse_matrix(std::string_view text, bool rows_as_vectors = false) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in, rows_as_vectors);
}

/// Inline form "2 0; 0 2": rows separated by ';'.
inline IntMatrix parse_inline_matrix(std::string_view text, bool rows_as_vectors = false) {
  std::vector<std::vector<std::int64_t>> rows;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto semi = text.find(';', pos);
    const auto piece = detail::trim(text.substr(pos, semi == std::string_view::npos ? std::string_view::npos : semi - pos));
    if (!piece.empty()) rows.push_back(detail::parse_ints(piece));
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  if (rows.empty()) throw ParseError("empty inline matrix");
  for (const auto& r : rows) {
    if (r.size() != rows.size()) {
      throw ParseError("inline matrix must be square: " + std::to_string(rows.size()) + " rows but a row of " +
                       std::to_string(r.size()) + " entries");
    }
  }
  IntMatrix m = IntMatrix::from_rows(rows);
  return rows_as_vectors ? m.transposed() : m;
}

/// Writes the text matrix format; the output re-parses to the same matrix.
inline std::string format_matrix(const IntMatrix& m) {
  std::ostringstream out;
  out << m.rows() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// JSON

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline Json to_json(const Integer& x) {
  if (x <= std::numeric_limits<std::int64_t>::max() && x >= std::numeric_limits<std::int64_t>::min()) {
    return static_cast<std::int64_t>(x);
  }
  return x.str();
}

inline Json vector_json(const Vector& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

/// 0-based indices rendered 1-based.
inline Json index_json(const IndexSet& s) {
  Json a = Json::array();
  for (auto i : s) a.push_back(i + 1);
  return a;
}

/// Row-major list of rows.
inline Json matrix_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(vector_json(m.row(i)));
  return a;
}

/// {"status", "witness", "inequality", "hajos_basis", "reason"}; field order
/// is fixed so identical verdicts serialize to identical bytes.
inline Json verdict_json(const CubiquityVerdict& v) {
  Json j;
  j["status"] = std::string(to_string(v.status));
  j["witness"] = v.witness ? vector_json(*v.witness) : Json(nullptr);
  if (v.inequality) {
    Json ineq;
    ineq["lhs"] = to_json(v.inequality->lhs);
    ineq["rhs"] = to_json(v.inequality->rhs);
    j["inequality"] = std::move(ineq);
  } else {
    j["inequality"] = nullptr;
  }
  j["hajos_basis"] = v.hajos ? matrix_json(v.hajos->basis) : Json(nullptr);
  j["reason"] = v.reason;
  return j;
}

inline Json wu_json(const WuData& w, const CubiquityVerdict& v) {
  Json j;
  j["W"] = vector_json(w.W);
  j["R_o"] = index_json(w.odd);
  j["lhs"] = to_json(v.inequality->lhs);
  j["rhs"] = to_json(v.inequality->rhs);
  j["status"] = std::string(to_string(v.status));
  return j;
}

inline Json stats_json(const Subset& s) {
  const SubsetStats st = stats(s);
  const WuData w = wu_element(s);
  auto sets = [](const std::vector<IndexSet>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(index_json(x));
    return a;
  };
  Json j;
  j["n"] = s.dim();
  j["norms"] = vector_json(s.norms());
  j["E"] = sets(st.E);
  j["V"] = sets(st.V);
  j["P"] = sets(st.P);
  j["p"] = st.p;
  j["Q"] = sets(st.Q);
  j["I"] = st.I;
  const auto sides = identity_sides(s);
  j["identity"] = {{"lhs", sides.lhs}, {"rhs", sides.rhs}};
  j["orthogonal"] = is_orthogonal(s);
  j["non_acute"] = is_non_acute(s);
  j["W"] = vector_json(w.W);
  j["R_o"] = index_json(w.odd);
  j["R_e"] = index_json(w.even);
  j["O"] = index_json(w.zero);
  return j;
}

/// One JSON line per rewrite step; `result` lists the resulting vectors.
inline Json step_json(const RewriteStep& step) {
  Json j;
  j["kind"] = std::string(to_string(step.kind));
  j["coordinates"] = index_json(step.coordinates);
  j["vectors"] = index_json(step.vectors);
  j["dim"] = step.result.dim();
  Json vs = Json::array();
  for (const auto& v : step.result.vectors()) vs.push_back(vector_json(v));
  j["result"] = std::move(vs);
  return j;
}

inline Json decomposition_json(const Subset& s, const BlockDecomposition& d) {
  Json a = Json::array();
  for (const auto& b : d.blocks) {
    Json j;
    j["coordinates"] = index_json(b.coordinates);
    j["vectors"] = index_json(b.vectors);
    j["kind"] = std::string(to_string(b.kind));
    j["matrix"] = matrix_json(block_subset(s, b).to_matrix());
    a.push_back(std::move(j));
  }
  return a;
}

}  // namespace cubiq
