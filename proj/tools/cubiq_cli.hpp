#pragma once

// Command-line front end. `run` is kept separate from main() so tests can
// drive it in-process.
//
// Exit codes: 0 cubiquitous (or a true/plain result), 1 not cubiquitous or
// obstructed (or a false result), 2 inconclusive / resource cap exceeded,
// 64 usage error, 65 input error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cubiq/cubiq.hpp"

namespace cubiq::cli {

inline constexpr int kExitYes = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;

inline constexpr const char* kCapEnv = "CUBIQ_RESOURCE_CAP";

enum class Format { Json, Text };

struct RunConfig {
  std::string subcommand;
  std::string input_path;
  std::string inline_matrix;
  std::uint64_t resource_cap = std::uint64_t{1} << 24;
  std::size_t permutation_cap = 8;
  unsigned workers = 1;
  std::optional<Format> format;
  bool rows_as_vectors = false;

  Limits limits() const { return {resource_cap, permutation_cap, workers}; }
};

inline int exit_code(Status s) {
  switch (s) {
    case Status::Cubiquitous: return kExitYes;
    case Status::NotCubiquitous:
    case Status::Obstructed: return kExitNo;
    case Status::Inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

namespace detail {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline IntMatrix read_input(const RunConfig& cfg) {
  const bool has_file = !cfg.input_path.empty();
  const bool has_inline = !cfg.inline_matrix.empty();
  if (has_file == has_inline) throw UsageError("give exactly one input: a matrix file or --matrix");
  if (has_inline) return parse_inline_matrix(cfg.inline_matrix, cfg.rows_as_vectors);
  if (cfg.input_path == "-") return parse_matrix(std::cin, cfg.rows_as_vectors);
  std::ifstream in(cfg.input_path);
  if (!in) throw UsageError("cannot open input file '" + cfg.input_path + "'");
  return parse_matrix(in, cfg.rows_as_vectors);
}

inline std::string join(const Vector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

inline void print_verdict(std::ostream& out, const CubiquityVerdict& v, Format f) {
  if (f == Format::Json) {
    out << verdict_json(v).dump() << '\n';
    return;
  }
  out << "status: " << to_string(v.status) << '\n';
  if (v.witness) out << "witness: " << join(*v.witness) << '\n';
  if (v.inequality) out << "inequality: " << v.inequality->lhs << " vs " << v.inequality->rhs << '\n';
  if (v.hajos) out << "hajos_basis:\n" << format_matrix(v.hajos->basis);
  out << "reason: " << v.reason << '\n';
}

inline std::int64_t parse_param(const std::string& s) {
  return cubiq::detail::parse_int(cubiq::detail::trim(s));
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv(kCapEnv); env && *env) {
    try {
      const auto v = cubiq::detail::parse_int(env);
      if (v < 1) throw ParseError("must be positive");
      cfg.resource_cap = static_cast<std::uint64_t>(v);
    } catch (const ParseError& e) {
      err << "error: " << kCapEnv << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }

  CLI::App app{"cubiq - decide, obstruct and certify cubiquity of sublattices of Z^n"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format_name;
  app.add_option("--cap", cfg.resource_cap, "Resource cap on enumeration work (default 2^24, env " + std::string(kCapEnv) + ")")
      ->check(CLI::PositiveNumber);
  app.add_option("--perm-cap", cfg.permutation_cap, "Largest n for the Hajós row-order search")->check(CLI::PositiveNumber);
  app.add_option("-j,--jobs", cfg.workers, "Worker threads for the brute-force oracle")->check(CLI::PositiveNumber);
  app.add_option("--format", format_name, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_flag("--rows-as-vectors", cfg.rows_as_vectors, "Read matrix rows (not columns) as the vectors");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input_path, "Matrix file ('-' for stdin)");
    sub->add_option("--matrix", cfg.inline_matrix, "Inline matrix, rows separated by ';' (e.g. \"2 0; 0 2\")");
  };

  auto* check = app.add_subcommand("check", "Decide cubiquity: determinant criterion, then brute force");
  add_input(check);
  auto* wu = app.add_subcommand("wu", "Wu obstruction of a non-acute basis");
  add_input(wu);
  bool wu_orthogonal = false;
  wu->add_flag("--orthogonal", wu_orthogonal, "Use the orthogonal form I(S) > n - 3|R_o|");
  auto* st = app.add_subcommand("stats", "Support statistics E, V, P, p, Q, I and predicates");
  add_input(st);
  auto* hajos = app.add_subcommand("hajos", "Search for a Hajós basis (requires |det| = 2^n)");
  add_input(hajos);
  auto* cls = app.add_subcommand("classify", "Block decomposition and verdict for an orthogonal basis");
  add_input(cls);
  auto* torus = app.add_subcommand("torus", "Rational-ball rule for sums of same-sign T(2,k) torus links");
  std::vector<std::string> torus_params;
  torus->add_option("k", torus_params, "Parameters k_1 ... k_n (use -- before negative values)")->required();
  auto* red = app.add_subcommand("reduce", "Apply all projections and double projections (JSON lines)");
  add_input(red);
  auto* con = app.add_subcommand("contract", "Contract at a site, or list valid sites (JSON lines)");
  add_input(con);
  std::vector<std::size_t> site;
  con->add_option("--site", site, "Coordinate i and vectors s t u, 1-based")->expected(4);
  auto* d4 = app.add_subcommand("det4", "Closed-form 4x4 determinant, or its zero-solution table as CSV");
  std::vector<std::string> d4_params;
  d4->add_option("abcd", d4_params, "Diagonal entries a b c d")->expected(0, 4);
  bool d4_zeros = false;
  std::int64_t d4_bound = 50;
  d4->add_flag("--zeros", d4_zeros, "List sorted zero solutions");
  d4->add_option("--bound", d4_bound, "Largest entry for --zeros")->check(CLI::PositiveNumber);
  auto* cat = app.add_subcommand("catalog", "Print the two 8x8 catalog blocks");
  int cat_block = 0;
  cat->add_option("--block", cat_block, "Print only block 1 or 2")->check(CLI::Range(1, 2));

  std::vector<std::string> argv_store{"cubiq"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (!format_name.empty()) cfg.format = format_name == "json" ? Format::Json : Format::Text;
  const Format fmt = cfg.format.value_or(Format::Json);
  const Limits limits = cfg.limits();

  try {
    if (check->parsed()) {
      cfg.subcommand = "check";
      const BasisMatrix b(detail::read_input(cfg));
      CubiquityVerdict v = det_gate(b, limits);
      // A refutation by the determinant criterion is upgraded to a witness
      // cube when the brute-force budget allows it.
      if (v.status != Status::Cubiquitous) {
        try {
          CubiquityVerdict brute = is_cubiquitous_bruteforce(b, limits);
          if (v.status == Status::Obstructed) {
            if (brute.status != Status::NotCubiquitous) {
              throw std::logic_error("determinant criterion and brute force disagree");
            }
            brute.inequality = v.inequality;
            brute.reason = v.reason + "; " + brute.reason;
          }
          v = std::move(brute);
        } catch (const ResourceLimit& e) {
          if (v.status == Status::Inconclusive) v.reason += std::string("; brute force skipped: ") + e.what();
        }
      }
      detail::print_verdict(out, v, fmt);
      return exit_code(v.status);
    }
    if (wu->parsed()) {
      const Subset s = Subset::from_columns(detail::read_input(cfg));
      const CubiquityVerdict v = wu_orthogonal ? wu_obstruction_orthogonal(s) : wu_obstruction(s);
      const WuData w = wu_element(s);
      if (fmt == Format::Json) {
        out << wu_json(w, v).dump() << '\n';
      } else {
        out << "W: " << detail::join(w.W) << '\n'
            << "lhs: " << v.inequality->lhs << '\n'
            << "rhs: " << v.inequality->rhs << '\n'
            << "status: " << to_string(v.status) << '\n';
      }
      return exit_code(v.status);
    }
    if (st->parsed()) {
      const Subset s = Subset::from_columns(detail::read_input(cfg));
      out << stats_json(s).dump(fmt == Format::Text ? 2 : -1) << '\n';
      return kExitYes;
    }
    if (hajos->parsed()) {
      const BasisMatrix b(detail::read_input(cfg));
      const auto h = hajos_basis(b, limits);
      const bool decidable = b.abs_det() == (Integer(1) << b.dim());
      if (fmt == Format::Json) {
        Json j;
        j["det"] = to_json(b.det());
        j["hajos_basis"] = h ? matrix_json(h->basis) : Json(nullptr);
        j["row_order"] = h ? index_json(h->row_order) : Json(nullptr);
        out << j.dump() << '\n';
      } else if (h) {
        out << format_matrix(h->basis);
      } else {
        out << "no Hajós basis" << (decidable ? "" : " (|det B| != 2^n)") << '\n';
      }
      return h ? kExitYes : (decidable ? kExitNo : kExitInconclusive);
    }
    if (cls->parsed()) {
      const Subset s = Subset::from_columns(detail::read_input(cfg));
      const auto c = classify_orthogonal_detailed(s, limits);
      if (fmt == Format::Json) {
        Json j;
        j["blocks"] = decomposition_json(s, c.decomposition);
        j["verdict"] = verdict_json(c.verdict);
        out << j.dump() << '\n';
      } else {
        for (const auto& b : c.decomposition.blocks) out << "block " << to_string(b.kind) << '\n';
        detail::print_verdict(out, c.verdict, fmt);
      }
      return exit_code(c.verdict.status);
    }
    if (torus->parsed()) {
      std::vector<std::int64_t> k;
      for (const auto& p : torus_params) k.push_back(detail::parse_param(p));
      const bool bounds = torus_sum_bounds_qball(k);
      if (cfg.format == Format::Json) {
        Json j;
        j["bounds"] = bounds;
        out << j.dump() << '\n';
      } else {
        out << "bounds: " << (bounds ? "true" : "false") << '\n';
      }
      return bounds ? kExitYes : kExitNo;
    }
    if (red->parsed()) {
      const Subset s = Subset::from_columns(detail::read_input(cfg));
      const auto steps = reduce_steps(s);
      for (const auto& step : steps) out << step_json(step).dump() << '\n';
      const Subset& final = steps.empty() ? s : steps.back().result;
      Json j;
      j["steps"] = steps.size();
      j["dim"] = final.dim();
      Json vs = Json::array();
      for (const auto& v : final.vectors()) vs.push_back(vector_json(v));
      j["result"] = std::move(vs);
      out << j.dump() << '\n';
      return kExitYes;
    }
    if (con->parsed()) {
      const Subset s = Subset::from_columns(detail::read_input(cfg));
      if (site.empty()) {
        for (const auto& c : contraction_sites(s)) {
          Json j;
          j["coordinate"] = c.coordinate + 1;
          j["s"] = c.s + 1;
          j["t"] = c.t + 1;
          j["u"] = c.u + 1;
          out << j.dump() << '\n';
        }
        return kExitYes;
      }
      for (auto x : site)
        if (x == 0) throw detail::UsageError("--site indices are 1-based");
      const ContractionSite c{site[0] - 1, site[1] - 1, site[2] - 1, site[3] - 1};
      const RewriteStep step = contraction_step(s, c);
      out << step_json(step).dump() << '\n';
      const Inequality before = wu_inequality(s);
      const Inequality after = wu_inequality(step.result);
      Json j;
      j["W_before"] = vector_json(wu_element(s).W);
      j["W_after"] = vector_json(wu_element(step.result).W);
      j["wu_before"] = {{"lhs", to_json(before.lhs)}, {"rhs", to_json(before.rhs)}, {"holds", before.holds()}};
      j["wu_after"] = {{"lhs", to_json(after.lhs)}, {"rhs", to_json(after.rhs)}, {"holds", after.holds()}};
      j["non_acute_before"] = is_non_acute(s);
      j["non_acute_after"] = is_non_acute(step.result);
      j["wu_preserved"] = before.holds() == after.holds();
      out << j.dump() << '\n';
      return kExitYes;
    }
    if (d4->parsed()) {
      if (d4_zeros) {
        if (!d4_params.empty()) throw detail::UsageError("det4 --zeros takes no positional values");
        out << "a,b,c,d\n";
        for (const auto& q : det4_zero_solutions(d4_bound)) out << q[0] << ',' << q[1] << ',' << q[2] << ',' << q[3] << '\n';
        return kExitYes;
      }
      if (d4_params.size() != 4) throw detail::UsageError("det4 needs four values a b c d, or --zeros");
      std::int64_t v[4];
      for (int i = 0; i < 4; ++i) v[i] = detail::parse_param(d4_params[i]);
      const auto value = det4_formula(v[0], v[1], v[2], v[3]);
      if (cfg.format == Format::Json) {
        Json j;
        j["det"] = value;
        out << j.dump() << '\n';
      } else {
        out << value << '\n';
      }
      return kExitYes;
    }
    if (cat->parsed()) {
      const auto blocks = catalog_blocks();
      for (int k = 0; k < 2; ++k) {
        if (cat_block != 0 && cat_block != k + 1) continue;
        if (cat_block == 0) out << "# block " << (k + 1) << '\n';
        out << format_matrix(blocks[static_cast<std::size_t>(k)].matrix());
      }
      return kExitYes;
    }
  } catch (const detail::UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace cubiq::cli
