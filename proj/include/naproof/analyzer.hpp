#pragma once

#include "naproof/ast.hpp"
#include "naproof/ast_ops.hpp"

#include <string>
#include <utility>
#include <vector>

namespace naproof {

// Lexical scope during analysis. Shadowing is allowed; lookups see the innermost binding.
struct ScopeEnv {
  std::vector<std::pair<std::string, Span>> bound_vars;
  VarSet goal_vars;

  bool bound(const std::string& v) const;
  ScopeEnv with(const std::string& v, Span site = {}) const;
};

struct AnalysisNote {
  Span span;
  std::string kind;  // hon-lambda, hon-range-set, hcds-exist-var
  std::string description;
};

struct AnalysisOutcome {
  ProofPtr proof;
  ProofGoal initial_goal;
  std::vector<AnalysisNote> notes;
};

// Empty premises; the statement (outer quantifiers included) is the conclusion.
ProofGoal build_initial_goal(const PropPtr& statement);

// Variables used freely by a proof chain, respecting the binders introduced by
// Intros, Set, ExistVar and posed variables of partial proofs.
VarSet proof_free_vars(const ProofPtr& p);

ProofPtr hcds(const ProofPtr& p, std::vector<AnalysisNote>* notes = nullptr);

// Notation rewrites: f(x) = t with x unbound becomes f = fun x -> t; {a_n} with n unbound
// becomes the range set of the sequence.
ProofPtr hon(const ProofPtr& p, const ScopeEnv& env, std::vector<AnalysisNote>* notes = nullptr);
PropPtr hon(const PropPtr& p, const ScopeEnv& env, std::vector<AnalysisNote>* notes = nullptr,
            Span span = {});

// hon on statement and proof, then hcds.
AnalysisOutcome analyze(const ProofPtr& p, const PropPtr& theorem_statement);

}  // namespace naproof
