#pragma once

#include "naproof/ast.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace naproof {

inline constexpr int kDefaultBudget = 12;

struct SolveResult {
  enum class Kind { Accepted, Rejected, Decomposed };
  Kind kind = Kind::Rejected;
  std::vector<PropPtr> props;

  static SolveResult accepted() { return {Kind::Accepted, {}}; }
  static SolveResult rejected() { return {Kind::Rejected, {}}; }
  // An empty list is acceptance.
  static SolveResult decomposed(std::vector<PropPtr> ps);
  // Nothing to contribute: hands back the input, which the manager prunes.
  static SolveResult pass(const PropPtr& p) { return {Kind::Decomposed, {p}}; }
};

using SolveFn = std::function<SolveResult(const ProofGoal&, const PropPtr&)>;
using PriorityFn = std::function<int(const PropPtr&)>;

struct SolverSpec {
  std::string name;
  SolveFn solve;
  int fee = 1;
  int default_priority = 0;
  PriorityFn priority;  // set for conditional solvers only; 0 means unavailable

  bool conditional() const { return static_cast<bool>(priority); }
};

struct Registry {
  std::vector<SolverSpec> solvers;

  const SolverSpec* find(const std::string& name) const;
  SolverSpec* find(const std::string& name);
  bool remove(const std::string& name);
};

struct TraceEntry {
  int depth = 0;
  int budget = 0;
  std::string solver;
  PropPtr input;
  std::string outcome;  // accepted, rejected, pruned, decomposed, failed
};

struct SolverVerdict {
  bool accepted = false;
  std::vector<TraceEntry> trace;
};

// Called for every manager invocation; `parent` is null at the root.
struct ManagerCall {
  int depth;
  int budget;
  PropPtr prop;
  const SolverSpec* parent_solver;
  PropPtr parent_prop;
};
using CallObserver = std::function<void(const ManagerCall&)>;

// Conditional solvers with nonzero dynamic priority, highest first, then general solvers by
// default priority. Ties keep registration order.
std::vector<const SolverSpec*> usable_list(const Registry& registry, const PropPtr& p);

SolverVerdict solver_manager(int budget, const Registry& registry, const ProofGoal& goal,
                             const PropPtr& p, const CallObserver& observer = {});

// syntactic, logic, chain, polynomial, rational, linear, limit, limit_rational, trig, explog,
// derivative.
Registry default_registry();
std::optional<SolverSpec> builtin_solver(const std::string& name);
std::vector<std::string> builtin_solver_names();

struct SolverConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// `.nsc` lines: `solver <name> on|off [fee=<n>] [priority=<n>]`; `#` comments.
// Starts from `base`; `on` adds a builtin solver that is not yet registered.
Registry apply_solver_config(const Registry& base, const std::string& text,
                             const std::string& source = "<solvers>");
Registry load_solver_config(const Registry& base, const std::string& path);

// ---- pieces shared by the concrete solvers and the checker --------------------------

// Facts usable for arithmetic: order/equality atoms from the premises and hypotheses,
// forward instances of universally quantified premises, and sign facts of atoms.
std::vector<PropPtr> saturate_facts(const std::vector<PropPtr>& premises,
                                    const std::vector<PropPtr>& hypotheses,
                                    const PropPtr& target);

// Fourier-Motzkin over the rationals, monomials as unknowns. True when the facts entail
// the target (a comparison, or `false` for inconsistency).
bool linear_entails(const std::vector<PropPtr>& facts, const PropPtr& target);

// Rewrites using definitions among the facts: `v = t`, `f = fun x -> t`,
// `for every x, f(x) = t`. Bounded number of passes.
struct Definitions {
  std::vector<std::pair<std::string, TermPtr>> vars;
  std::vector<std::pair<std::string, TermPtr>> functions;  // name -> lambda
  TermPtr rewrite(const TermPtr& t) const;
  PropPtr rewrite(const PropPtr& p) const;
  bool empty() const { return vars.empty() && functions.empty(); }
};
Definitions collect_definitions(const std::vector<PropPtr>& facts);

}  // namespace naproof
