// naproof: check natural-language proofs of calculus exercises.

#include "naproof/analyzer.hpp"
#include "naproof/checker.hpp"
#include "naproof/knowledge.hpp"
#include "naproof/parser.hpp"
#include "naproof/printer.hpp"
#include "naproof/sexpr.hpp"
#include "naproof/solvers.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace naproof;

namespace {

constexpr int kExitRejected = 1;
constexpr int kExitError = 2;

struct Options {
  std::vector<std::string> inputs;
  std::string theorem;
  std::vector<std::string> libraries;
  std::vector<std::string> disabled;
  std::string solvers;
  int budget = kDefaultBudget;
  std::string format = "text";
  std::string emit = "analyzed-ast";
  std::string keyword_table;
  bool no_core = false;
  bool show_goals = false;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> search_path() {
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("NAPROOF_LIBRARY_PATH")) {
    std::stringstream ss(env);
    for (std::string d; std::getline(ss, d, ':');)
      if (!d.empty()) dirs.push_back(d);
  }
  return dirs;
}

std::string resolve_library(const std::string& name) {
  if (fs::exists(name)) return name;
  for (const auto& dir : search_path()) {
    for (const auto& candidate : {fs::path(dir) / name, fs::path(dir) / (name + ".nfl")})
      if (fs::exists(candidate)) return candidate.string();
  }
  throw ConfigError("library not found: " + name);
}

Library build_library(const Options& o) {
  Library lib = o.no_core ? Library{} : core_library();
  for (const auto& l : o.libraries) lib.merge(load_library(resolve_library(l)));
  for (const auto& d : o.disabled) {
    std::stringstream ss(d);
    for (std::string name; std::getline(ss, name, ',');)
      if (!name.empty() && !lib.disable(name)) throw ConfigError("cannot disable unknown theorem: " + name);
  }
  return lib;
}

Registry build_registry(const Options& o) {
  Registry r = default_registry();
  if (!o.solvers.empty()) r = load_solver_config(r, o.solvers);
  return r;
}

KeywordTable build_keywords(const Options& o) {
  if (o.keyword_table.empty()) return KeywordTable::builtin();
  return KeywordTable::load(o.keyword_table);
}

bool has_header(const std::string& text) {
  std::stringstream ss(text);
  for (std::string line; std::getline(ss, line);) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return line.compare(first, 8, "Theorem:") == 0;
  }
  return false;
}

struct Loaded {
  PropPtr theorem;
  ProofPtr proof;
};

// Parses one input; diagnostics go to stderr.
std::optional<Loaded> load(const std::string& path, const Options& o, const KeywordTable& kw) {
  auto text = read_file(path);
  if (!text) {
    std::cerr << path << ": error: cannot read file\n";
    return std::nullopt;
  }
  SourceDocument doc{*text, path};
  auto report = [&](const std::vector<ParseDiagnostic>& ds) {
    for (const auto& d : ds) std::cerr << format_diagnostic(d, path) << "\n";
  };
  if (!o.theorem.empty()) {
    auto stmt = parse_prop(o.theorem, kw);
    if (!stmt.ok()) {
      report(stmt.diagnostics);
      return std::nullopt;
    }
    // A header in the file is parsed as usual and its statement replaced.
    if (has_header(*text)) {
      auto d = parse_document(doc, kw);
      if (!d.ok()) {
        report(d.diagnostics);
        return std::nullopt;
      }
      return Loaded{*stmt.value, d.value->proof};
    }
    auto pr = parse_proof(doc, kw);
    if (!pr.ok()) {
      report(pr.diagnostics);
      return std::nullopt;
    }
    return Loaded{*stmt.value, *pr.value};
  }
  auto d = parse_document(doc, kw);
  if (!d.ok()) {
    report(d.diagnostics);
    return std::nullopt;
  }
  return Loaded{d.value->theorem, d.value->proof};
}

int run_check(const Options& o) {
  const auto kw = build_keywords(o);
  const auto lib = build_library(o);
  const auto reg = build_registry(o);
  CheckerConfig cfg{&lib, &reg, o.budget};
  int status = 0;
  std::vector<std::string> json_reports;
  for (const auto& path : o.inputs) {
    auto doc = load(path, o, kw);
    if (!doc) {
      status = kExitError;
      continue;
    }
    auto analyzed = analyze(doc->proof, doc->theorem);
    auto report = check(analyzed, cfg);
    if (!report.completed) status = std::max(status, kExitRejected);
    if (o.format == "json") {
      json_reports.push_back(report_json(report, path));
    } else {
      std::cout << report_text(report, path);
      if (o.show_goals)
        for (const auto& v : report.verdicts)
          std::cout << "--- after (" << v.label << ") " << v.rule << "\n"
                    << (v.qed ? std::string("QED\n") : pretty_print(v.goal_after) + "\n");
    }
  }
  if (o.format == "json") {
    if (json_reports.size() == 1) {
      std::cout << json_reports[0];
    } else {
      auto all = nlohmann::ordered_json::array();
      for (const auto& r : json_reports) all.push_back(nlohmann::ordered_json::parse(r));
      std::cout << all.dump(2) << "\n";
    }
  }
  return status;
}

int run_emit(const Options& o) {
  const auto kw = build_keywords(o);
  int status = 0;
  for (const auto& path : o.inputs) {
    auto doc = load(path, o, kw);
    if (!doc) {
      status = kExitError;
      continue;
    }
    if (o.emit == "ast") {
      std::cout << to_sexpr(doc->theorem) << "\n" << to_sexpr(doc->proof) << "\n";
      continue;
    }
    auto analyzed = analyze(doc->proof, doc->theorem);
    std::cout << to_sexpr(analyzed.initial_goal.conclusion) << "\n" << to_sexpr(analyzed.proof) << "\n";
    for (const auto& n : analyzed.notes)
      std::cerr << path << ":" << n.span.start.line << ":" << n.span.start.column << ": note: " << n.kind << ": "
                << n.description << "\n";
  }
  return status;
}

int run_fmt(const Options& o) {
  const auto kw = build_keywords(o);
  int status = 0;
  for (const auto& path : o.inputs) {
    auto doc = load(path, o, kw);
    if (!doc) {
      status = kExitError;
      continue;
    }
    std::cout << "Theorem: " << pretty_print(doc->theorem) << "\nProof:\n" << pretty_print(doc->proof) << "\n";
  }
  return status;
}

void common_options(CLI::App* app, Options& o) {
  app->add_option("inputs", o.inputs, "Proof files (.nfp)")->required()->check(CLI::ExistingFile);
  app->add_option("--theorem", o.theorem, "Theorem statement, replacing the file's header");
  app->add_option("--keyword-table", o.keyword_table, "Keyword table (TSV) replacing the built-in one")
      ->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks natural-language proofs of calculus exercises"};
  app.require_subcommand(1);
  Options o;

  auto* check_cmd = app.add_subcommand("check", "Check proofs and report a verdict per step");
  common_options(check_cmd, o);
  check_cmd->add_option("--library", o.libraries, "Extra theorem library (.nfl); repeatable");
  check_cmd->add_flag("--no-core", o.no_core, "Do not load the built-in core library");
  check_cmd->add_option("--disable", o.disabled, "Disable theorems or definitions by name; repeatable");
  check_cmd->add_option("--solvers", o.solvers, "Solver configuration (.nsc)")->check(CLI::ExistingFile);
  check_cmd->add_option("--budget", o.budget, "Fee budget of each solver-manager call")
      ->check(CLI::NonNegativeNumber);
  check_cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  check_cmd->add_flag("--show-goals", o.show_goals, "Print the proof goal after every step (text format)");

  auto* emit_cmd = app.add_subcommand("emit", "Print the syntax tree after parsing or after analysis");
  common_options(emit_cmd, o);
  emit_cmd->add_option("--emit", o.emit, "Stage")->check(CLI::IsMember({"ast", "analyzed-ast"}));

  auto* fmt_cmd = app.add_subcommand("fmt", "Pretty-print proofs in canonical surface syntax");
  common_options(fmt_cmd, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (check_cmd->parsed()) return run_check(o);
    if (emit_cmd->parsed()) return run_emit(o);
    return run_fmt(o);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
  } catch (const LibraryError& e) {
    std::cerr << e.what() << "\n";
  } catch (const SolverConfigError& e) {
    std::cerr << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kExitError;
}
