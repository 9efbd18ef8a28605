#include <doctest.h>

#include "naproof/ast_ops.hpp"
#include "naproof/parser.hpp"
#include "naproof/solvers.hpp"

#include <algorithm>

using namespace naproof;

namespace {

ProofGoal goal_with(std::initializer_list<const char*> premises) {
  ProofGoal g;
  int i = 0;
  for (const char* p : premises) g.premises.push_back({std::to_string(++i), prop_of(p)});
  g.conclusion = mk::truth();
  return g;
}

bool proves(const ProofGoal& g, const char* claim, int budget = kDefaultBudget,
            const Registry& reg = default_registry()) {
  return solver_manager(budget, reg, g, prop_of(claim)).accepted;
}

bool proves(const char* claim) { return proves(goal_with({}), claim); }

SolverSpec fake(const std::string& name, int fee, int prio, SolveFn fn, bool conditional = false) {
  SolverSpec s{name, std::move(fn), fee, prio, {}};
  if (conditional) s.priority = [prio](const PropPtr&) { return prio; };
  return s;
}

}  // namespace

TEST_CASE("usable list: conditional solvers first, then by default priority, ties stable") {
  Registry r;
  auto noop = [](const ProofGoal&, const PropPtr& p) { return SolveResult::pass(p); };
  r.solvers.push_back(fake("g_low", 1, 10, noop));
  r.solvers.push_back(fake("g_high", 1, 50, noop));
  r.solvers.push_back(fake("g_tie", 1, 10, noop));
  r.solvers.push_back(fake("c_off", 1, 0, noop, true));
  r.solvers.push_back(fake("c_on", 1, 5, noop, true));
  auto list = usable_list(r, mk::truth());
  std::vector<std::string> names;
  for (const auto* s : list) names.push_back(s->name);
  CHECK(names == std::vector<std::string>{"c_on", "g_high", "g_low", "g_tie"});
}

TEST_CASE("default registry contains every builtin") {
  auto reg = default_registry();
  for (const auto& n : builtin_solver_names()) CHECK(reg.find(n) != nullptr);
  CHECK_FALSE(builtin_solver("nonsense").has_value());
  auto lim = usable_list(reg, prop_of("lim_{n -> inf} 1/n = 0"));
  REQUIRE_FALSE(lim.empty());
  CHECK(lim.front()->name == "limit");
}

TEST_CASE("pruning: a solver returning its input is skipped") {
  Registry r;
  int calls = 0;
  r.solvers.push_back(fake("echo", 1, 10, [&](const ProofGoal&, const PropPtr& p) {
    ++calls;
    return SolveResult::pass(p);
  }));
  auto v = solver_manager(5, r, goal_with({}), mk::truth());
  CHECK_FALSE(v.accepted);
  CHECK(calls == 1);
  REQUIRE(v.trace.size() == 1);
  CHECK(v.trace[0].outcome == "pruned");
}

TEST_CASE("fees consume the budget") {
  Registry r;
  // Splits `x = k` into `x = k - 1` until k = 0, which it accepts.
  r.solvers.push_back(fake("count", 2, 10, [](const ProofGoal&, const PropPtr& p) {
    auto e = as_eq(p);
    auto k = as_num(e->right)->value;
    if (k == 0) return SolveResult::accepted();
    return SolveResult::decomposed({mk::eq(e->left, mk::num(Rational(k - 1)))});
  }));
  auto g = goal_with({});
  // Depth 3 needs budget > 2 * 3.
  CHECK_FALSE(solver_manager(6, r, g, prop_of("x = 3")).accepted);
  CHECK(solver_manager(7, r, g, prop_of("x = 3")).accepted);
  CHECK_FALSE(solver_manager(0, r, g, prop_of("x = 0")).accepted);
}

TEST_CASE("a rejection stops the search for that proposition") {
  Registry r;
  r.solvers.push_back(fake("no", 1, 20, [](const ProofGoal&, const PropPtr&) { return SolveResult::rejected(); }));
  r.solvers.push_back(fake("yes", 1, 10, [](const ProofGoal&, const PropPtr&) { return SolveResult::accepted(); }));
  CHECK_FALSE(solver_manager(5, r, goal_with({}), mk::truth()).accepted);
}

TEST_CASE("observer sees every call with its parent") {
  auto reg = default_registry();
  std::vector<ManagerCall> calls;
  solver_manager(kDefaultBudget, reg, goal_with({"x = 2"}), prop_of("x + 1 = 3 and x > 0"),
                 [&](const ManagerCall& c) { calls.push_back(c); });
  REQUIRE_FALSE(calls.empty());
  CHECK(calls[0].depth == 0);
  CHECK(calls[0].parent_solver == nullptr);
  for (std::size_t i = 1; i < calls.size(); ++i) {
    CHECK(calls[i].depth > 0);
    CHECK(calls[i].parent_solver != nullptr);
  }
}

TEST_CASE("solver configuration files") {
  auto base = default_registry();
  auto r = apply_solver_config(base, "# tweak\nsolver limit off\nsolver linear on fee=3 priority=7\n");
  CHECK(r.find("limit") == nullptr);
  REQUIRE(r.find("linear"));
  CHECK(r.find("linear")->fee == 3);
  CHECK_THROWS_AS(apply_solver_config(base, "solver warp on\n"), SolverConfigError);
  CHECK_THROWS_AS(apply_solver_config(base, "solver linear maybe\n"), SolverConfigError);
  CHECK_THROWS_AS(apply_solver_config(base, "solver linear on fee=x\n"), SolverConfigError);
  auto readded = apply_solver_config(r, "solver limit on\n");
  CHECK(readded.find("limit") != nullptr);
}

TEST_CASE("arithmetic claims") {
  CHECK(proves("2 + 2 = 4"));
  CHECK_FALSE(proves("2 + 2 = 5"));
  CHECK(proves("(x + 1)^2 = x^2 + 2*x + 1"));
  CHECK_FALSE(proves("(x + 1)^2 = x^2 + 1"));
  CHECK(proves("x^2 + 1 > 0"));
  CHECK(proves(goal_with({"x > 1"}), "(x^2 - 1)/(x - 1) = x + 1"));
  CHECK_FALSE(proves("(x^2 - 1)/(x - 1) = x + 1"));
  CHECK(proves(goal_with({"x > 1", "y > 2"}), "2*x + 3*y > 8"));
  CHECK_FALSE(proves(goal_with({"x > 1", "y > 2"}), "2*x + 3*y > 9"));
}

TEST_CASE("logic and chains") {
  CHECK(proves(goal_with({"a < b", "b <= c"}), "a < c"));
  CHECK_FALSE(proves(goal_with({"a < b", "c <= b"}), "a < c"));
  CHECK(proves(goal_with({"p = 1", "q = 2"}), "p = 1 and q = 2"));
  CHECK(proves("there exists x such that x > 3"));
  CHECK(proves(goal_with({"for every n, n > 0 implies u_n > 1", "m > 0"}), "u_m > 1"));
}

TEST_CASE("transcendental identities") {
  CHECK(proves("sin(x)^2 + cos(x)^2 = 1"));
  CHECK(proves("cos(2*x) = 1 - 2*sin(x)^2"));
  CHECK(proves("sin(pi/6) = 1/2"));
  CHECK_FALSE(proves("sin(pi/6) = 1"));
  CHECK(proves("ln(6) = ln(2) + ln(3)"));
  CHECK(proves("exp(x + y) = exp(x)*exp(y)"));
  CHECK(proves(goal_with({"x > 0"}), "ln(x^2) = 2*ln(x)"));
  CHECK_FALSE(proves("ln(6) = ln(2) + ln(4)"));
}

TEST_CASE("limits") {
  CHECK(proves("lim_{n -> inf} 1/n = 0"));
  CHECK(proves("lim_{n -> inf} (3*n^2 + 1)/(n^2 + 2) = 3"));
  CHECK_FALSE(proves("lim_{n -> inf} (3*n^2 + 1)/(n^2 + 2) = 1"));
  CHECK(proves("lim_{x -> 0} sin(x)/x = 1"));
  CHECK(proves("lim_{x -> 1} (x^2 - 1)/(x - 1) = 2"));
  CHECK(proves("lim_{n -> inf} (1 + 1/n)^n = e"));
  CHECK_FALSE(proves("lim_{x -> 1} (x^2 - 1)/(x - 1) = 1"));
}

TEST_CASE("disabling the limit solvers loses limit claims") {
  auto reg = apply_solver_config(default_registry(), "solver limit off\nsolver limit_rational off\n");
  CHECK_FALSE(proves(goal_with({}), "lim_{n -> inf} (3*n^2 + 1)/(n^2 + 2) = 3", kDefaultBudget, reg));
}

TEST_CASE("derivatives") {
  CHECK(proves("d/dx (x^3) = 3*x^2"));
  CHECK(proves(goal_with({"f = Fun x -> x^2"}), "f'(3) = 6"));
  CHECK_FALSE(proves(goal_with({"f = Fun x -> x^2"}), "f'(3) = 9"));
}

TEST_CASE("arithmetic helpers") {
  CHECK(linear_entails({prop_of("x > 1"), prop_of("y >= x")}, prop_of("y > 0")));
  CHECK_FALSE(linear_entails({prop_of("x > 1")}, prop_of("x > 2")));
  CHECK(linear_entails({prop_of("x > 1"), prop_of("x < 0")}, mk::falsity()));
  auto defs = collect_definitions({prop_of("y = x + 1"), prop_of("f = Fun t -> t^2")});
  CHECK_FALSE(defs.empty());
  auto rewritten = beta_reduce(defs.rewrite(term_of("f(y)")));
  CHECK(alpha_equal(rewritten, term_of("(x + 1)^2")));
}

TEST_CASE("builtin fees and priorities") {
  struct Row {
    const char* name;
    int fee;
    int priority;
    bool conditional;
  };
  const Row rows[] = {{"syntactic", 1, 100, false}, {"logic", 1, 90, false},   {"chain", 1, 80, false},
                      {"polynomial", 1, 70, false}, {"rational", 1, 60, false}, {"linear", 2, 10, true},
                      {"limit", 2, 10, true},       {"limit_rational", 2, 10, true}, {"trig", 2, 10, true},
                      {"explog", 2, 10, true},      {"derivative", 2, 10, true}};
  for (const auto& r : rows) {
    INFO(r.name);
    auto s = builtin_solver(r.name);
    REQUIRE(s);
    CHECK(s->fee == r.fee);
    CHECK(s->conditional() == r.conditional);
    if (!r.conditional) CHECK(s->default_priority == r.priority);
  }
  auto lin = builtin_solver("linear");
  CHECK(lin->priority(prop_of("x < 1")) == 10);
  CHECK(lin->priority(prop_of("f is continuous at 2")) == 0);
}

TEST_CASE("contradictory premises are not refuted") {
  CHECK(proves(goal_with({"x > 3", "x < 2"}), "3 < 2"));
  auto v = solver_manager(kDefaultBudget, default_registry(), goal_with({}), prop_of("3 < 2"));
  CHECK_FALSE(v.accepted);
  CHECK(std::any_of(v.trace.begin(), v.trace.end(), [](const TraceEntry& t) { return t.outcome == "rejected"; }));
}
