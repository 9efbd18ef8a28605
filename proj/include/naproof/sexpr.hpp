#pragma once

// Canonical constructor-name serialization of the AST, e.g.
//   (ProofAction (ASet "A" (TBinOp RLim (TInfty PositiveInfty) ...)) Nil)
// Whitespace-insensitive; `read_*` inverts `to_sexpr` up to step labels and spans,
// which are not serialized.

#include "naproof/ast.hpp"

#include <stdexcept>
#include <string>

namespace naproof {

struct SexprError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string to_sexpr(const TermPtr& t);
std::string to_sexpr(const PropPtr& p);
std::string to_sexpr(const FwdMethod& m);
// Proof chains are laid out one statement per line, subproofs indented.
std::string to_sexpr(const ProofPtr& p);
std::string to_sexpr(const ProofGoal& g);

TermPtr read_term(const std::string& text);
PropPtr read_prop(const std::string& text);
ProofPtr read_proof(const std::string& text);

}  // namespace naproof
