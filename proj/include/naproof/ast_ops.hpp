#pragma once

#include "naproof/ast.hpp"

#include <functional>
#include <set>
#include <span>
#include <string>

namespace naproof {

using VarSet = std::set<std::string>;

VarSet free_vars(const TermPtr& t);
VarSet free_vars(const PropPtr& p);
VarSet free_vars(std::span<const PropPtr> ps);
// FV(A ∪ {C}); the hole contributes nothing.
VarSet free_vars(const ProofGoal& goal);

bool occurs_free(const std::string& v, const TermPtr& t);
bool occurs_free(const std::string& v, const PropPtr& p);

// First name derived from `base` that is not in `avoid` (base itself if possible).
std::string fresh_name(const std::string& base, const VarSet& avoid);

// Capture-avoiding substitution of `replacement` for free occurrences of `var`.
TermPtr substitute(const TermPtr& target, const std::string& var, const TermPtr& replacement);
PropPtr substitute(const PropPtr& target, const std::string& var, const TermPtr& replacement);

// Replaces every PLongOrder chain by the right-nested conjunction of its links.
PropPtr desugar(const PropPtr& p);
TermPtr desugar(const TermPtr& t);

// Structural identity (bound names must agree).
bool equal(const TermPtr& a, const TermPtr& b);
bool equal(const PropPtr& a, const PropPtr& b);

// Identity up to consistent renaming of bound variables and chain desugaring.
bool alpha_equal(const TermPtr& a, const TermPtr& b);
bool alpha_equal(const PropPtr& a, const PropPtr& b);

// Splits top-level conjunctions (after desugaring chains) into their conjuncts.
std::vector<PropPtr> conjuncts(const PropPtr& p);

// Beta-reduces applications of lambda binders everywhere in the term.
TermPtr beta_reduce(const TermPtr& t);
PropPtr beta_reduce(const PropPtr& p);

// Index of the newest premise alpha-equal to `p`, or -1.
int find_premise(const ProofGoal& goal, const PropPtr& p);

}  // namespace naproof

namespace naproof {

// Statement-by-statement comparison of proof trees; propositions and terms are compared
// with `alpha_equal` (or `equal` when `structural`). Labels and spans are ignored.
bool proof_equal(const ProofPtr& a, const ProofPtr& b, bool structural = false);

}  // namespace naproof

namespace naproof {

// Bottom-up rewriting of every subterm (binder bodies included). `f` sees rebuilt children.
TermPtr map_subterms(const TermPtr& t, const std::function<TermPtr(const TermPtr&)>& f);
// Applies `map_subterms` to every term of a proposition.
PropPtr map_terms(const PropPtr& p, const std::function<TermPtr(const TermPtr&)>& f);
bool any_subterm(const TermPtr& t, const std::function<bool(const TermPtr&)>& pred);
bool any_subterm(const PropPtr& p, const std::function<bool(const TermPtr&)>& pred);

}  // namespace naproof
