#pragma once

#include "naproof/ast.hpp"

#include <string>

namespace naproof {

// Surface syntax accepted by the parser; parsing the output yields an alpha-equal AST.
std::string pretty_print(const TermPtr& t);
std::string pretty_print(const PropPtr& p);
// One statement per line, subproofs indented inside braces. Explicit labels are kept.
std::string pretty_print(const ProofPtr& p);
std::string pretty_print(const FwdMethod& m);
// Premises one per line as `label: prop`, then `⊢ conclusion` (or `⊢ ?` for the hole).
std::string pretty_print(const ProofGoal& g);

}  // namespace naproof
