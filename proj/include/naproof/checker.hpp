#pragma once

#include "naproof/analyzer.hpp"
#include "naproof/ast.hpp"
#include "naproof/knowledge.hpp"
#include "naproof/solvers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace naproof {

struct StepVerdict {
  std::string label;
  Span span;
  std::string rule;
  bool accepted = false;
  std::string message;
  ProofGoal goal_after;
  bool qed = false;  // goal_after is QED
  // Goal the nested proof of a Subgoal / SufficeWithProof / partial step starts from.
  std::optional<ProofGoal> nested_goal;
};

struct CheckReport {
  std::vector<StepVerdict> verdicts;
  bool completed = false;
};

struct CheckerConfig {
  const Library* library = nullptr;
  const Registry* registry = nullptr;
  int budget = kDefaultBudget;
};

// One step on a proof head. Nested proofs are checked, their verdicts dropped.
struct StepOutcome {
  bool accepted = false;
  std::string rule;
  std::string message;
  std::optional<ProofGoal> next;  // nullopt is QED
};
StepOutcome step(const ProofGoal& goal, const ProofPtr& head, const CheckerConfig& cfg);

CheckReport check_proof(const ProofGoal& goal, const ProofPtr& proof, const CheckerConfig& cfg);
CheckReport check(const AnalysisOutcome& outcome, const CheckerConfig& cfg);

// Obligations for terms to denote: nonzero denominators, ln and sqrt arguments in
// their domain. Subterms under binders are skipped.
std::vector<PropPtr> well_definedness_obligations(const TermPtr& t);
std::vector<PropPtr> well_definedness_obligations(const PropPtr& p);

std::string report_json(const CheckReport& r, const std::string& file);
std::string report_text(const CheckReport& r, const std::string& file);

}  // namespace naproof
