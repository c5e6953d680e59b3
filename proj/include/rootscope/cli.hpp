#pragma once

// rootscope <roots|verify|radiality|suite> <family> <params...> [options]
//
// Exit codes: 0 all checks pass, 1 a verification failed, 2 bad input.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rootscope/catalog.hpp"
#include "rootscope/model.hpp"
#include "rootscope/radiality.hpp"
#include "rootscope/report.hpp"
#include "rootscope/rootspace.hpp"
#include "rootscope/theorem.hpp"

namespace rootscope::cli {

enum class Format { json, text };

struct RunConfig {
  AlgebraSpec spec;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  std::optional<std::string> output;
  Format format = Format::json;

  void validate() const {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidParams, "tolerance must be positive");
    if (trials < 1) throw Error(ErrorCode::InvalidParams, "trials must be at least 1");
  }

  // Tolerance ladder derived from the base tolerance.
  double reconstruct_tol() const { return 10.0 * tol; }
  double radiality_tol() const { return 10.0 * tol; }
  double invariance_tol() const { return 0.1 * tol; }
};

inline constexpr double kFiniteDifferenceTol = 1e-6;
// Rank decisions inside the decomposition never use a threshold below this.
inline constexpr double kDecomposeTolFloor = 1e-12;
inline constexpr std::size_t kFundamentalSamples = 50;
inline constexpr std::size_t kInvarianceSamples = 50;

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names{"all",        "relation1",   "relation1b", "theorem1",
                                              "reconstruct", "corollaries", "grading"};
  return names;
}

inline double default_tolerance() {
  if (const char* env = std::getenv("ROOTSCOPE_TOL")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used == std::string(env).size() && v > 0.0) return v;
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::InvalidParams, "ROOTSCOPE_TOL is not a positive number");
  }
  return 1e-9;
}

inline DecomposeOptions decompose_options(const RunConfig& cfg) {
  DecomposeOptions opt;
  opt.tol = std::max(cfg.tol, kDecomposeTolFloor);
  opt.seed = cfg.seed;
  return opt;
}

// ---------------------------------------------------------------------------

inline Report verify_model(const Model& model, const std::string& which, const RunConfig& cfg) {
  const auto& L = model.algebra;
  const auto& C = model.cartan;
  const auto& D = model.datum;
  const bool all = which == "all";
  Report report;
  for (std::size_t i = 0; i < D.roots.size(); ++i) {
    if (all || which == "relation1") report.append(relation1_report(L, C, D, i, cfg.trials, cfg.tol, cfg.seed));
    if (all || which == "relation1b") report.append(relation1b_report(L, C, D, i, cfg.trials, cfg.tol, cfg.seed));
    if (all || which == "theorem1") report.append(verify_theorem1(L, C, D, i, cfg.trials, cfg.tol, cfg.seed));
    if (all || which == "reconstruct")
      report.append(reconstruct_report(L, C, D, i, cfg.trials, cfg.reconstruct_tol(), cfg.seed));
  }
  if (all || which == "corollaries") report.append(corollary_checks(L, C, D, cfg.trials, cfg.tol, cfg.seed));
  if (all || which == "grading") report.append(grading_check(L, C, D, cfg.tol));
  return report;
}

inline std::vector<std::size_t> eligible_roots(const Model& model) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < model.datum.roots.size(); ++i)
    if (model.datum.roots[i].multiplicity() >= 2) out.push_back(i);
  return out;
}

inline Report radiality_model(const Model& model, FunctionKind kind, const RunConfig& cfg, bool with_control) {
  Report report;
  for (std::size_t i : eligible_roots(model)) {
    report.append(radiality_check(model, kind, i, cfg.trials, cfg.radiality_tol(), cfg.seed));
    if (with_control) report.append(negative_control(model, i, cfg.trials, cfg.seed));
  }
  if (kind != FunctionKind::probe) {
    report.append(k_invariance_check(model, kind, kInvarianceSamples, cfg.invariance_tol(), cfg.seed));
    report.append(fundamental_derivative_check(model, kind, kFundamentalSamples, kFiniteDifferenceTol, cfg.seed));
  }
  return report;
}

// ---------------------------------------------------------------------------

inline void write_text(std::ostream& os, const Report& report) {
  for (const auto& e : report.entries) {
    os << (e.pass ? "PASS " : "FAIL ") << e.check << "  " << e.algebra;
    if (e.root) {
      os << "  root (";
      for (std::size_t k = 0; k < e.root->size(); ++k) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.4f", (*e.root)[k]);
        os << (k ? ", " : "") << buf;
      }
      os << ")";
    }
    if (e.function_kind) os << "  fn " << *e.function_kind;
    os << "  max_residual " << e.max_residual << "  tol " << e.tol << "  trials " << e.trials << "\n";
  }
  os << (report.pass() ? "ALL PASS" : "FAILURES PRESENT") << "\n";
}

inline void emit(const RunConfig& cfg, const Json& json, const Report* report, std::ostream& out) {
  std::string text;
  if (cfg.format == Format::json || !report) {
    text = dump_json(json);
  } else {
    std::ostringstream os;
    write_text(os, *report);
    text = os.str();
  }
  if (cfg.output) {
    std::ofstream file(*cfg.output, std::ios::binary);
    if (!file) throw Error(ErrorCode::InvalidParams, "cannot open output file " + *cfg.output);
    file << text;
  } else {
    out << text;
  }
}

inline Json run_header(const std::string& command, const RunConfig& cfg, const std::string& algebra) {
  Json j;
  j["command"] = command;
  j["algebra"] = algebra;
  j["tol"] = cfg.tol;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  return j;
}

inline int cmd_roots(const RunConfig& cfg, std::ostream& out) {
  const DecomposeOptions opt = decompose_options(cfg);
  const Model model = analyze(cfg.spec, opt);
  const Json j = to_json(summarize(model.datum));
  if (cfg.format == Format::text) {
    std::ostringstream os;
    os << model.datum.algebra << "  dim " << model.datum.dim << "  rank " << model.datum.a_dim << "  dim m "
       << model.datum.m_frame.size() << "\n";
    for (const auto& r : model.datum.roots) {
      os << "  root (";
      for (std::size_t k = 0; k < r.covector.size(); ++k) os << (k ? ", " : "") << r.covector[k];
      os << ")  multiplicity " << r.multiplicity() << "\n";
    }
    if (cfg.output) {
      std::ofstream(*cfg.output) << os.str();
    } else {
      out << os.str();
    }
    return 0;
  }
  emit(cfg, j, nullptr, out);
  return 0;
}

inline int cmd_verify(const RunConfig& cfg, const std::string& which, std::ostream& out) {
  if (std::find(verify_suites().begin(), verify_suites().end(), which) == verify_suites().end())
    throw Error(ErrorCode::InvalidParams, "unknown verification suite '" + which + "'");
  const DecomposeOptions opt = decompose_options(cfg);
  const Model model = analyze(cfg.spec, opt);
  const Report report = verify_model(model, which, cfg);
  Json j = run_header("verify", cfg, model.datum.algebra);
  j["which"] = which;
  j["pass"] = report.pass();
  j["checks"] = to_json(report);
  emit(cfg, j, &report, out);
  return report.pass() ? 0 : 1;
}

inline int cmd_radiality(const RunConfig& cfg, FunctionKind kind, std::ostream& out) {
  const DecomposeOptions opt = decompose_options(cfg);
  const Model model = analyze(cfg.spec, opt);
  if (eligible_roots(model).empty())
    throw Error(ErrorCode::MultiplicityTooSmall, model.datum.algebra + " has no root of multiplicity >= 2");
  const Report report = radiality_model(model, kind, cfg, false);
  Json j = run_header("radiality", cfg, model.datum.algebra);
  j["function_kind"] = std::string(to_string(kind));
  j["pass"] = report.pass();
  j["checks"] = to_json(report);
  emit(cfg, j, &report, out);
  return report.pass() ? 0 : 1;
}

inline int cmd_suite(const RunConfig& cfg, std::ostream& out) {
  const DecomposeOptions opt = decompose_options(cfg);
  Report report;
  std::vector<std::string> algebras;
  for (const auto& spec : list_catalog()) {
    const Model model = analyze(spec, opt);
    algebras.push_back(model.datum.algebra);
    report.append(verify_model(model, "all", cfg));
    if (!eligible_roots(model).empty()) {
      report.append(radiality_model(model, FunctionKind::trace_p, cfg, true));
      report.append(radiality_model(model, FunctionKind::trace_p2, cfg, false));
    }
  }
  std::set<std::string> names;
  for (const auto& e : report.entries) names.insert(e.check);

  Json j = run_header("suite", cfg, "catalog");
  j["algebras"] = algebras;
  j["check_names"] = std::vector<std::string>(names.begin(), names.end());
  j["pass"] = report.pass();
  j["checks"] = to_json(report);
  emit(cfg, j, &report, out);
  return report.pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------

/// Entry point shared by the executable and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Restricted root space decompositions and their verification", "rootscope"};
  app.require_subcommand(1);

  std::vector<std::string> positional;
  std::optional<double> tol;
  std::uint64_t seed = 42;
  std::size_t trials = 100;
  std::string fn = "trace_p";
  std::string json_path;
  std::string format = "json";
  std::string spec_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("args", positional, "family and parameters, e.g. 'su 2 1'");
    sub->add_option("--tol", tol, "base tolerance (default 1e-9 or $ROOTSCOPE_TOL)");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--trials", trials, "samples per check");
    sub->add_option("--json", json_path, "write output to this path instead of stdout");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--spec", spec_text, "algebra spec as one string, e.g. \"so 1 4\"");
  };
  CLI::App* roots = app.add_subcommand("roots", "print the restricted root data");
  CLI::App* verify = app.add_subcommand("verify", "verify the root space identities");
  CLI::App* radiality = app.add_subcommand("radiality", "check radiality of invariant functions");
  CLI::App* suite = app.add_subcommand("suite", "run everything over the catalog");
  for (auto* sub : {roots, verify, radiality, suite}) add_common(sub);
  radiality->add_option("--fn", fn, "trace_p, trace_p2, trace_p_inv or probe");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  RunConfig cfg;
  try {
    cfg.tol = tol ? *tol : default_tolerance();
    cfg.seed = seed;
    cfg.trials = trials;
    cfg.format = format == "text" ? Format::text : Format::json;
    if (!json_path.empty()) cfg.output = json_path;
    cfg.validate();

    std::string which = "all";
    if (verify->parsed() && !positional.empty() &&
        std::find(verify_suites().begin(), verify_suites().end(), positional.front()) != verify_suites().end()) {
      which = positional.front();
      positional.erase(positional.begin());
    }
    if (!suite->parsed()) {
      if (!spec_text.empty() && !positional.empty())
        throw Error(ErrorCode::InvalidParams, "give the algebra either positionally or with --spec");
      cfg.spec = spec_text.empty() ? AlgebraSpec::parse(positional) : AlgebraSpec::parse(spec_text);
    } else if (!positional.empty() || !spec_text.empty()) {
      throw Error(ErrorCode::InvalidParams, "suite runs the whole catalog and takes no algebra");
    }
    const FunctionKind kind = parse_function_kind(fn);

    try {
      if (roots->parsed()) return cmd_roots(cfg, out);
      if (verify->parsed()) return cmd_verify(cfg, which, out);
      if (radiality->parsed()) return cmd_radiality(cfg, kind, out);
      return cmd_suite(cfg, out);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::InvalidParams || e.code() == ErrorCode::MultiplicityTooSmall) throw;
      err << "rootscope: " << e.what() << "\n";
      return 1;
    }
  } catch (const Error& e) {
    err << "rootscope: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace rootscope::cli
