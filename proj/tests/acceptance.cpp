// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "cli_run.hpp"
#include "mutations.hpp"
#include "running_example.hpp"
#include "test_util.hpp"

#include "naproof/algebra.hpp"
#include "naproof/analyzer.hpp"
#include "naproof/ast_ops.hpp"
#include "naproof/checker.hpp"
#include "naproof/knowledge.hpp"
#include "naproof/parser.hpp"
#include "naproof/printer.hpp"
#include "naproof/sexpr.hpp"
#include "naproof/solvers.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

using namespace naproof;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failure reasons for one criterion.
struct Outcome {
  std::vector<std::string> problems;
  std::string summary;
  void fail(const std::string& why) { problems.push_back(why); }
  bool ok() const { return problems.empty(); }
};

struct Env {
  Library lib = core_library();
  Registry reg = default_registry();
  CheckerConfig cfg(int budget = kDefaultBudget) const { return {&lib, &reg, budget}; }
};

std::string shorten(const std::string& s) { return s.size() > 160 ? s.substr(0, 160) + "..." : s; }

// ---------------------------------------------------------------------------

Outcome running_example_end_to_end() {
  using namespace running_example;
  Outcome o;
  Env env;
  auto t0 = Clock::now();
  auto text = testutil::slurp(testutil::corpus("monotone_convergence.nfp"));
  auto report = testutil::check_text(text, env.cfg());
  double took = seconds_since(t0);
  if (!report.completed) o.fail("proof not complete");
  for (const auto& v : report.verdicts)
    if (!v.accepted) o.fail("step " + v.label + " rejected: " + v.message);

  auto sup = find_verdict(report, "2");
  if (!sup || !same_premises(sup->goal_after, after_supremum()) ||
      !alpha_equal(sup->goal_after.conclusion, prop_of(kGoal)))
    o.fail("goal after the supremum step differs");
  auto sub = find_verdict(report, "3");
  if (!sub || !sub->nested_goal || !same_premises(*sub->nested_goal, subgoal_premises()) ||
      !alpha_equal(sub->nested_goal->conclusion, prop_of(kLim)))
    o.fail("subgoal snapshot differs");
  auto last = find_verdict(report, "7");
  if (!last || !last->goal_after.is_hole() || !same_premises(last->goal_after, partial_end()))
    o.fail("snapshot inside the partial proof differs");
  auto pose = find_verdict(report, "4");
  if (!pose || !same_premises(pose->goal_after, after_partial()) ||
      !alpha_equal(pose->goal_after.conclusion, prop_of(kLim)))
    o.fail("snapshot after the partial proof differs");

  auto cli = testutil::run_cli("check " + testutil::corpus("monotone_convergence.nfp"));
  if (cli.status != 0) o.fail("CLI exit status " + std::to_string(cli.status));
  if (took >= 10) o.fail("took " + std::to_string(took) + " s");
  std::ostringstream s;
  s << report.verdicts.size() << " steps accepted in " << took << " s, snapshots match";
  o.summary = s.str();
  return o;
}

// ---------------------------------------------------------------------------

Outcome analysis_goldens() {
  Outcome o;
  auto d = testutil::document(testutil::slurp(testutil::corpus("monotone_convergence.nfp")));
  auto a = analyze(d.proof, d.theorem);
  auto emitted = to_sexpr(a.initial_goal.conclusion) + "\n" + to_sexpr(a.proof) + "\n";
  if (emitted != testutil::slurp(testutil::golden("monotone_convergence.analyzed.sexpr")))
    o.fail("analyzed tree differs from the golden file");
  std::set<std::string> introduced;
  int hcds_notes = 0;
  for (const auto& n : a.notes)
    if (n.kind == "hcds-exist-var") {
      ++hcds_notes;
      introduced.insert(n.description.substr(0, n.description.find(' ', 11)));
    }
  if (hcds_notes != 2 || introduced != std::set<std::string>{"introduced A", "introduced N"})
    o.fail("expected exactly the A and N introductions");

  auto again = analyze(a.proof, a.initial_goal.conclusion);
  if (!proof_equal(again.proof, a.proof, true) || !again.notes.empty())
    o.fail("analysis is not the identity on the rigorous copy");

  std::vector<AnalysisNote> notes;
  auto lam = hon(prop_of("f(x) = x^2 + 1"), ScopeEnv{}, &notes);
  if (!equal(lam, read_prop(R"((PBinPred REq (TVar "f") (TBinder LambdaB "x" (TBinOp Add (TBinOp Pow (TVar "x") (TNum 2)) (TNum 1)))))")))
    o.fail("f(x) with x unbound is not a lambda");
  auto app_src = prop_of("f(x) = x^2 + 1");
  if (!equal(hon(app_src, ScopeEnv{}.with("x")), app_src)) o.fail("f(x) with x bound was rewritten");
  auto range = hon(prop_of("{a_n} is bounded above"), ScopeEnv{});
  if (!equal(range, read_prop(R"((PUnPred UpperBounded (TSet ["n"] (TApply (TVar "a") (TVar "n")) PTrue)))")))
    o.fail("{a_n} with n unbound is not the range set");
  auto single = hon(prop_of("{a_n} is bounded above"), ScopeEnv{}.with("n"));
  if (!equal(single, read_prop(R"((PUnPred UpperBounded (TSet [] (TApply (TVar "a") (TVar "n")) PTrue)))")))
    o.fail("{a_n} with n bound is not a singleton");
  o.summary = "HCDS inserts only A and N; HON lambda and set cases match";
  return o;
}

// ---------------------------------------------------------------------------

Outcome mutation_suite() {
  Outcome o;
  Env env;
  int n = 0;
  for (const auto& m : testutil::mutations()) {
    ++n;
    std::string tag = m.file + " (" + m.kind + ")";
    std::string text;
    try {
      text = testutil::replace_once(testutil::slurp(testutil::corpus(m.file)), m.from, m.to);
    } catch (const std::exception& e) {
      o.fail(tag + ": " + e.what());
      continue;
    }
    auto d = testutil::document(text);
    auto analyzed = analyze(d.proof, d.theorem);
    auto r = check(analyzed, env.cfg());
    auto bad = running_example::find_verdict(r, m.rejected_label);
    if (!bad || bad->accepted) o.fail(tag + ": step " + m.rejected_label + " not rejected");
    std::set<std::string> labels;
    testutil::collect_labels(analyzed.proof, labels);
    for (const auto& l : labels)
      if (!running_example::find_verdict(r, l)) o.fail(tag + ": no verdict for step " + l);
    auto path = fs::temp_directory_path() / ("naproof_mut_" + std::to_string(n) + ".nfp");
    std::ofstream(path) << text;
    auto cli = testutil::run_cli("check " + path.string());
    fs::remove(path);
    if (cli.status != 1) o.fail(tag + ": CLI exit status " + std::to_string(cli.status));
  }
  if (n < 10) o.fail("fewer than 10 mutations");
  o.summary = std::to_string(n) + " mutations rejected at the corrupted step, exit 1";
  return o;
}

// ---------------------------------------------------------------------------
// Random linear and propositional formulas with an exhaustive integer oracle.

struct Formula {
  enum Kind { Atom, Not, And, Or, Implies } kind = Atom;
  int coef[3] = {0, 0, 0};
  int rhs = 0;
  BinPred rel = BinPred::RLt;
  std::vector<Formula> kids;
};

const char* kVars[3] = {"x", "y", "z"};

bool holds(const Formula& f, const int* v) {
  switch (f.kind) {
    case Formula::Atom: {
      long lhs = 0;
      for (int i = 0; i < 3; ++i) lhs += static_cast<long>(f.coef[i]) * v[i];
      switch (f.rel) {
        case BinPred::RLt: return lhs < f.rhs;
        case BinPred::RLe: return lhs <= f.rhs;
        case BinPred::RGt: return lhs > f.rhs;
        case BinPred::RGe: return lhs >= f.rhs;
        case BinPred::REq: return lhs == f.rhs;
        default: return lhs != f.rhs;
      }
    }
    case Formula::Not: return !holds(f.kids[0], v);
    case Formula::And: return holds(f.kids[0], v) && holds(f.kids[1], v);
    case Formula::Or: return holds(f.kids[0], v) || holds(f.kids[1], v);
    case Formula::Implies: return !holds(f.kids[0], v) || holds(f.kids[1], v);
  }
  return false;
}

bool valid_on_box(const Formula& f, int nvars) {
  int v[3] = {0, 0, 0};
  std::function<bool(int)> go = [&](int i) {
    if (i == nvars) return holds(f, v);
    for (int k = -5; k <= 5; ++k) {
      v[i] = k;
      if (!go(i + 1)) return false;
    }
    return true;
  };
  return go(0);
}

PropPtr to_prop(const Formula& f) {
  switch (f.kind) {
    case Formula::Atom: {
      TermPtr lhs;
      for (int i = 0; i < 3; ++i) {
        if (f.coef[i] == 0) continue;
        TermPtr term = f.coef[i] == 1 ? mk::var(kVars[i]) : mk::mul(mk::num(f.coef[i]), mk::var(kVars[i]));
        lhs = lhs ? mk::add(lhs, term) : term;
      }
      if (!lhs) lhs = mk::num(0);
      return mk::binpred(f.rel, lhs, mk::num(f.rhs));
    }
    case Formula::Not: return mk::negate(to_prop(f.kids[0]));
    case Formula::And: return mk::conj(to_prop(f.kids[0]), to_prop(f.kids[1]));
    case Formula::Or: return mk::disj(to_prop(f.kids[0]), to_prop(f.kids[1]));
    case Formula::Implies: return mk::implies(to_prop(f.kids[0]), to_prop(f.kids[1]));
  }
  return mk::truth();
}

struct FormulaGen {
  std::mt19937& rng;
  int nvars;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  Formula atom() {
    static const BinPred rels[] = {BinPred::RLt, BinPred::RLe, BinPred::RGt, BinPred::RGe, BinPred::REq, BinPred::RNe};
    Formula f;
    for (int i = 0; i < nvars; ++i) f.coef[i] = pick(-3, 3);
    f.rhs = pick(-6, 6);
    f.rel = rels[pick(0, 5)];
    return f;
  }

  Formula formula(int depth) {
    if (depth == 0 || pick(0, 2) == 0) return atom();
    Formula f;
    f.kind = static_cast<Formula::Kind>(pick(1, 4));
    f.kids.push_back(formula(depth - 1));
    if (f.kind != Formula::Not) f.kids.push_back(formula(depth - 1));
    return f;
  }

  // Premise and a loosened or tightened copy: about half are valid.
  Formula related() {
    Formula a = atom();
    if (a.rel == BinPred::REq || a.rel == BinPred::RNe) a.rel = BinPred::RLe;
    Formula b = a;
    int shift = pick(-2, 2);
    b.rhs += shift;
    if (pick(0, 1)) {
      Formula c = atom();
      if (c.rel == BinPred::REq || c.rel == BinPred::RNe) c.rel = BinPred::RGe;
      c.coef[0] = a.coef[0];
      Formula both;
      both.kind = Formula::And;
      both.kids = {a, c};
      Formula imp;
      imp.kind = Formula::Implies;
      imp.kids = {both, b};
      return imp;
    }
    Formula imp;
    imp.kind = Formula::Implies;
    imp.kids = {a, b};
    return imp;
  }
};

Outcome oracle_equivalence() {
  Outcome o;
  std::mt19937 rng(20240517);
  auto reg = default_registry();
  ProofGoal empty;
  empty.conclusion = mk::truth();
  int accepted = 0, valid = 0;
  for (int i = 0; i < 500; ++i) {
    FormulaGen gen{rng, 1 + i % 3};
    Formula f = i % 2 ? gen.related() : gen.formula(2);
    auto p = to_prop(f);
    bool truth = valid_on_box(f, gen.nvars);
    valid += truth;
    bool acc = solver_manager(kDefaultBudget, reg, empty, p).accepted;
    accepted += acc;
    if (acc && !truth) o.fail("unsound acceptance: " + shorten(pretty_print(p)));
  }
  std::ostringstream s;
  s << "500 formulas, " << accepted << " accepted, " << valid << " valid on the box, 0 unsound";
  o.summary = s.str();
  if (accepted == 0) o.fail("nothing accepted; the check is vacuous");
  return o;
}

// ---------------------------------------------------------------------------
// Random registries over synthetic and builtin solvers.

std::size_t prop_hash(const PropPtr& p) { return std::hash<std::string>{}(to_sexpr(p)); }

SolverSpec synthetic_solver(int id, int fee, int prio, bool self_return) {
  SolverSpec s;
  s.name = "synthetic" + std::to_string(id);
  s.fee = fee;
  s.default_priority = prio;
  s.solve = [id, self_return](const ProofGoal&, const PropPtr& p) {
    std::size_t h = prop_hash(p) ^ (static_cast<std::size_t>(id) * 0x9e3779b97f4a7c15ULL);
    switch (h % 10) {
      case 0: return SolveResult::accepted();
      case 1: return SolveResult::rejected();
      case 2:
      case 3: return SolveResult::pass(p);
      default: break;
    }
    std::vector<PropPtr> kids;
    int n = 1 + static_cast<int>((h / 10) % 2);
    for (int k = 0; k < n; ++k)
      kids.push_back(mk::gt(mk::add(mk::var("x"), mk::num(static_cast<long long>((h / 100 + k * 7) % 13))),
                            mk::num(static_cast<long long>((h / 1000 + k) % 5))));
    if (self_return && (h / 10000) % 3 == 0) kids.push_back(p);
    return SolveResult::decomposed(kids);
  };
  return s;
}

Outcome solver_manager_properties() {
  Outcome o;
  std::mt19937 rng(7041);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto builtins = builtin_solver_names();
  auto t0 = Clock::now();
  int monotone_checked = 0, pruned_seen = 0;
  for (int i = 0; i < 1000; ++i) {
    Registry reg;
    int count = pick(1, 6);
    for (int k = 0; k < count; ++k) {
      int fee = pick(1, 3);
      if (pick(0, 1)) {
        auto s = *builtin_solver(builtins[pick(0, static_cast<int>(builtins.size()) - 1)]);
        if (reg.find(s.name)) continue;
        s.fee = fee;
        reg.solvers.push_back(s);
      } else {
        reg.solvers.push_back(synthetic_solver(k, fee, pick(1, 100), pick(0, 1) == 1));
      }
    }
    FormulaGen gen{rng, pick(1, 3)};
    auto p = to_prop(i % 2 ? gen.related() : gen.formula(1));
    ProofGoal goal;
    goal.conclusion = mk::truth();
    int budget = pick(0, 6);

    int max_depth = 0;
    bool pruning_ok = true;
    auto observer = [&](const ManagerCall& c) {
      max_depth = std::max(max_depth, c.depth);
      if (c.parent_prop && alpha_equal(c.prop, c.parent_prop)) pruning_ok = false;
    };
    auto v = solver_manager(budget, reg, goal, p, observer);
    if (max_depth > budget) o.fail("case " + std::to_string(i) + ": depth exceeds the budget");
    if (!pruning_ok) o.fail("case " + std::to_string(i) + ": a call received its parent's proposition");
    for (const auto& t : v.trace) pruned_seen += t.outcome == "pruned";
    if (v.accepted) {
      ++monotone_checked;
      for (int extra : {1, 3})
        if (!solver_manager(budget + extra, reg, goal, p).accepted)
          o.fail("case " + std::to_string(i) + ": accepted at " + std::to_string(budget) + " but not at " +
                 std::to_string(budget + extra));
    }
  }
  double took = seconds_since(t0);
  if (took >= 60) o.fail("took " + std::to_string(took) + " s");
  std::ostringstream s;
  s << "1000 registries, " << monotone_checked << " acceptances re-run with more budget, " << pruned_seen
    << " pruned self-returns, " << took << " s";
  o.summary = s.str();
  return o;
}

// ---------------------------------------------------------------------------
// Random surface proofs for the print/parse round trip.

struct ProofGen {
  std::mt19937& rng;
  int label = 0;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  std::string var() { return std::string(1, "xyzuw"[pick(0, 4)]); }

  std::string term(int depth) {
    if (depth == 0) {
      switch (pick(0, 3)) {
        case 0: return std::to_string(pick(0, 9));
        case 1: return "a_n";
        default: return var();
      }
    }
    switch (pick(0, 9)) {
      case 0: return term(depth - 1) + " + " + term(depth - 1);
      case 1: return term(depth - 1) + " - " + term(depth - 1);
      case 2: return "(" + term(depth - 1) + ")*(" + term(depth - 1) + ")";
      case 3: return "(" + term(depth - 1) + ")/(" + term(depth - 1) + ")";
      case 4: return "(" + term(depth - 1) + ")^" + std::to_string(pick(2, 3));
      case 5: return std::string(pick(0, 1) ? "sin" : "ln") + "(" + term(depth - 1) + ")";
      case 6: return "lim_{n -> inf} (" + term(depth - 1) + ")";
      case 7: return "sqrt(" + term(depth - 1) + ")";
      case 8: return "|" + term(depth - 1) + "|";
      default: return term(0);
    }
  }

  std::string comparison() {
    static const char* rels[] = {"=", "!=", "<", ">", "<=", ">="};
    if (pick(0, 5) == 0) return term(1) + " < " + term(1) + " <= " + term(1);
    return term(pick(0, 2)) + " " + rels[pick(0, 5)] + " " + term(pick(0, 2));
  }

  std::string prop(int depth) {
    if (depth == 0) return comparison();
    switch (pick(0, 5)) {
      case 0: return "(" + prop(depth - 1) + ") and (" + prop(depth - 1) + ")";
      case 1: return "(" + prop(depth - 1) + ") or (" + prop(depth - 1) + ")";
      case 2: return "(" + prop(depth - 1) + ") implies (" + prop(depth - 1) + ")";
      case 3: return "for every " + var() + ", " + prop(depth - 1);
      case 4: return "there exists " + var() + " such that " + prop(depth - 1);
      default: return comparison();
    }
  }

  std::string lbl() { return pick(0, 1) ? "(" + std::to_string(++label) + ") " : ""; }

  std::string statement(int depth, const std::string& indent) {
    switch (pick(0, depth > 0 ? 9 : 6)) {
      case 0: return indent + lbl() + "Let " + var() + ".\n";
      case 1: return indent + lbl() + "Assume " + prop(1) + ".\n";
      case 2: return indent + lbl() + "Set " + var() + " = " + term(2) + ".\n";
      case 3: return indent + lbl() + "Hence " + prop(2) + ".\n";
      case 4: return indent + lbl() + "By theorem SupremumTheorem, " + prop(1) + ".\n";
      case 5: return indent + lbl() + "By definition SeqLimit, " + prop(1) + ".\n";
      case 6: return indent + lbl() + "It suffices to show " + prop(1) + ".\n";
      case 7:
        return indent + lbl() + "For every " + var() + " > 0 {\n" + block(depth - 1, indent + "  ") + indent +
               "  This ends the partial proof.\n" + indent + "}\n";
      case 8:
        return indent + lbl() + "Suppose " + prop(0) + " {\n" + block(depth - 1, indent + "  ") + indent +
               "  This ends the partial proof.\n" + indent + "}\n";
      default:
        return indent + lbl() + "We use definition SeqLimit to show that " + prop(1) + " {\n" +
               block(depth - 1, indent + "  ") + indent + "  which proves the proposition.\n" + indent + "}\n";
    }
  }

  std::string block(int depth, const std::string& indent) {
    std::string out;
    for (int i = pick(1, 4); i > 0; --i) out += statement(depth, indent);
    return out;
  }

  std::string proof() { return block(2, "") + "which proves the theorem.\n"; }
};

Outcome round_trip_and_determinism() {
  Outcome o;
  std::mt19937 rng(99);
  int stable = 0;
  for (int i = 0; i < 300; ++i) {
    ProofGen gen{rng};
    auto text = gen.proof();
    auto first = parse_proof(SourceDocument{text});
    if (!first.ok()) {
      o.fail("generated proof does not parse: " + shorten(text));
      continue;
    }
    auto printed = pretty_print(*first.value);
    auto second = parse_proof(SourceDocument{printed});
    if (!second.ok()) {
      o.fail("printed proof does not parse: " + shorten(printed));
      continue;
    }
    if (!proof_equal(*first.value, *second.value) || pretty_print(*second.value) != printed) {
      o.fail("round trip changed the proof: " + shorten(text));
      continue;
    }
    ++stable;
  }
  std::string args = "check --format json";
  for (const auto& f : testutil::corpus_files()) args += " " + f;
  auto a = testutil::run_cli(args);
  auto b = testutil::run_cli(args);
  if (a.status != 0 || a.out.empty()) o.fail("corpus JSON run failed");
  if (a.out != b.out) o.fail("corpus JSON reports differ between runs");
  o.summary = std::to_string(stable) + "/300 proofs stable; corpus JSON byte-identical across runs";
  return o;
}

// ---------------------------------------------------------------------------

Outcome corpus_breadth() {
  Outcome o;
  Env env;
  auto files = testutil::corpus_files();
  std::map<std::string, int> topics;
  const std::vector<std::pair<std::string, std::string>> prefixes = {
      {"arith_", "arithmetic"},  {"trig_", "trigonometry"},      {"explog_", "exp/log"},
      {"ineq_", "inequality"},   {"deriv_", "derivative"},       {"limit_", "limit evaluation"},
      {"epsilon_", "epsilon-N"}, {"continuity_", "continuity"}};
  double slowest_parse = 0, slowest_check = 0;
  for (const auto& f : files) {
    auto name = fs::path(f).filename().string();
    for (const auto& [prefix, topic] : prefixes)
      if (name.rfind(prefix, 0) == 0) ++topics[topic];
    auto text = testutil::slurp(f);
    auto t0 = Clock::now();
    auto d = parse_document(SourceDocument{text, name});
    double parse_s = seconds_since(t0);
    if (!d.ok()) {
      o.fail(name + " does not parse");
      continue;
    }
    auto t1 = Clock::now();
    auto r = check(analyze(d.value->proof, d.value->theorem), env.cfg());
    double check_s = seconds_since(t1);
    slowest_parse = std::max(slowest_parse, parse_s);
    slowest_check = std::max(slowest_check, check_s);
    if (!r.completed) o.fail(name + " is not accepted");
    if (parse_s >= 1) o.fail(name + " parse took " + std::to_string(parse_s) + " s");
    if (check_s >= 30) o.fail(name + " check took " + std::to_string(check_s) + " s");
  }
  if (files.size() < 20) o.fail("only " + std::to_string(files.size()) + " proofs");
  for (const auto& [prefix, topic] : prefixes)
    if (!topics.count(topic)) o.fail("no proof for " + topic);
  std::ostringstream s;
  s << files.size() << " proofs over " << topics.size() << " topics accepted; slowest parse " << slowest_parse
    << " s, slowest check " << slowest_check << " s";
  o.summary = s.str();
  return o;
}

// ---------------------------------------------------------------------------

Outcome configurability() {
  Outcome o;
  auto mc = testutil::slurp(testutil::corpus("monotone_convergence.nfp"));
  {
    Env env;
    if (!testutil::check_text(mc, env.cfg()).completed) o.fail("running example fails before disabling");
    env.lib.disable("SupremumTheorem");
    auto r = testutil::check_text(mc, env.cfg());
    auto v = running_example::find_verdict(r, "2");
    if (r.completed || !v || v->accepted) o.fail("disabling SupremumTheorem did not reject step 2");
    else if (v->message.find("SupremumTheorem") == std::string::npos) o.fail("message does not name SupremumTheorem");
    auto cli = testutil::run_cli("check --disable SupremumTheorem " + testutil::corpus("monotone_convergence.nfp"));
    if (cli.status != 1 || cli.out.find("SupremumTheorem") == std::string::npos)
      o.fail("CLI --disable SupremumTheorem did not reject with the name");
  }
  int flipped = 0;
  {
    Env on;
    Env off;
    off.reg = apply_solver_config(off.reg, "solver limit off\nsolver limit_rational off\n");
    for (const auto& f : testutil::corpus_files()) {
      auto name = fs::path(f).filename().string();
      if (name.rfind("limit_", 0) != 0) continue;
      auto text = testutil::slurp(f);
      if (!testutil::check_text(text, on.cfg()).completed) o.fail(name + " fails with all solvers");
      auto r = testutil::check_text(text, off.cfg());
      if (r.completed) {
        o.fail(name + " still accepted without the limit solvers");
        continue;
      }
      bool named = std::any_of(r.verdicts.begin(), r.verdicts.end(), [](const StepVerdict& v) {
        return !v.accepted && v.message.find("limit") != std::string::npos;
      });
      if (!named) o.fail(name + ": no rejection message names the limit solvers");
      ++flipped;
    }
  }
  if (flipped == 0) o.fail("no limit proofs found");
  o.summary = "SupremumTheorem disabled rejects the running example; limit solvers off flip " +
              std::to_string(flipped) + " limit proofs";
  return o;
}

// ---------------------------------------------------------------------------

Outcome derivative_cross_check() {
  Outcome o;
  struct Row {
    const char* text;
    double lo, hi;  // sampling interval inside the domain
  };
  const Row rows[] = {
      {"x^7 - 3*x^2 + 5", -2, 2},        {"x^2*sin(x)", -3, 3},           {"exp(3*x)*cos(x)", -1, 1},
      {"ln(x^2 + 1)", -3, 3},            {"sqrt(x^2 + 4)", -3, 3},        {"1/(1 + x^2)", -3, 3},
      {"tan(x)", -1.2, 1.2},             {"sin(x)^3", -3, 3},             {"cos(x^2)", -2, 2},
      {"exp(sin(x))", -3, 3},            {"ln(x)/x", 0.5, 4},             {"x*ln(x) - x", 0.5, 4},
      {"sqrt(x)*exp(-x)", 0.5, 4},       {"(x^2 - 1)/(x^2 + 1)", -3, 3},  {"sin(2*x)*cos(3*x)", -3, 3},
      {"x^3/(x + 5)", -2, 3},            {"exp(-x^2)", -2, 2},            {"ln(sin(x) + 2)", -3, 3},
      {"(1 + x)^5", -2, 1},              {"|x|*x", 0.5, 3},
  };
  std::mt19937 rng(314159);
  int points = 0;
  for (const auto& row : rows) {
    TermPtr f, d;
    try {
      f = term_of(row.text);
      d = differentiate(f, "x");
    } catch (const std::exception& e) {
      o.fail(std::string(row.text) + ": " + e.what());
      continue;
    }
    std::uniform_real_distribution<double> u(row.lo, row.hi);
    for (int k = 0; k < 5; ++k) {
      double x = u(rng);
      const double h = 1e-5;
      auto fp = evaluate(f, {{"x", x + h}});
      auto fm = evaluate(f, {{"x", x - h}});
      auto dv = evaluate(d, {{"x", x}});
      if (!fp || !fm || !dv) {
        o.fail(std::string(row.text) + ": cannot evaluate at " + std::to_string(x));
        continue;
      }
      double numeric = (*fp - *fm) / (2 * h);
      if (std::fabs(*dv - numeric) > 1e-6 * std::max(std::fabs(numeric), 1.0))
        o.fail(std::string(row.text) + " at " + std::to_string(x) + ": symbolic " + std::to_string(*dv) +
               ", numeric " + std::to_string(numeric));
      ++points;
    }
  }
  o.summary = std::to_string(std::size(rows)) + " expressions, " + std::to_string(points) +
              " points within rtol 1e-6";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"end-to-end running example", running_example_end_to_end},
      {"static-analysis goldens", analysis_goldens},
      {"mutation suite", mutation_suite},
      {"solver-manager properties", solver_manager_properties},
      {"oracle equivalence", oracle_equivalence},
      {"round trip and determinism", round_trip_and_determinism},
      {"corpus breadth", corpus_breadth},
      {"configurability", configurability},
      {"derivative cross-checks", derivative_cross_check},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok() ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.summary << "\n";
    for (std::size_t k = 0; k < o.problems.size() && k < 10; ++k) std::cout << "    " << o.problems[k] << "\n";
    if (o.problems.size() > 10) std::cout << "    ... " << o.problems.size() - 10 << " more\n";
    failures += !o.ok();
  }
  std::cout.flush();
  return failures == 0 ? 0 : 1;
}
