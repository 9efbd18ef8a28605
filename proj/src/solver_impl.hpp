#pragma once

// Shared helpers of the concrete solvers.

#include "naproof/ast_ops.hpp"
#include "naproof/solvers.hpp"

#include <vector>

namespace naproof::detail {

std::vector<PropPtr> premise_props(const ProofGoal& g);

// `for every x`, `A implies` and `under (...)` prefixes moved into hypotheses. Quantified
// names are renamed away from the goal's free variables.
struct Sequent {
  std::vector<PropPtr> hyps;
  PropPtr target;
};
Sequent strip(const ProofGoal& g, const PropPtr& p);

// Comparison view of PBinPred / PCBinPred with an ordering or equality predicate.
struct Comparison {
  BinPred rel;
  TermPtr left, right;
};
std::optional<Comparison> as_comparison(const PropPtr& p);
BinPred flip(BinPred r);     // a r b  <=>  b flip(r) a
BinPred negated(BinPred r);  // not (a r b)  <=>  a negated(r) b ; RNe <-> REq

bool has_op(const PropPtr& p, TermUnOp op);
bool has_binop(const PropPtr& p, TermBinOp op);

// Wraps a derived obligation in the hypotheses it may use.
PropPtr under(const std::vector<PropPtr>& hyps, const PropPtr& p);

SolverSpec syntactic_solver();
SolverSpec logic_solver();
SolverSpec chain_solver();
SolverSpec polynomial_solver();
SolverSpec rational_solver();
SolverSpec linear_solver();
SolverSpec limit_solver();
SolverSpec limit_rational_solver();
SolverSpec trig_solver();
SolverSpec explog_solver();
SolverSpec derivative_solver();

}  // namespace naproof::detail
