#pragma once

#include "naproof/ast.hpp"

#include <set>
#include <string>
#include <vector>

namespace testutil {

struct Mutation {
  std::string file;
  std::string from;
  std::string to;
  std::string rejected_label;  // the corrupted step
  std::string kind;
};

inline const std::vector<Mutation>& mutations() {
  static const std::vector<Mutation> m = {
      {"monotone_convergence.nfp", "a_n < A.", "a_n > A.", "6", "flipped inequality"},
      {"monotone_convergence.nfp", "By supremum theorem", "By theorem IncreasingSequence", "2",
       "wrong theorem name"},
      {"monotone_convergence.nfp", "    This ends the partial proof.\n", "", "4", "missing end of partial proof"},
      {"ineq_linear.nfp", "Let y.", "Let x.", "h2", "ill-scoped introduction"},
      {"limit_product_chain.nfp", "(1) We have lim_{n -> inf} (1 + 1/n)*(2 + 1/n)*(3 + 1/n) = 6.\n", "", "2",
       "skipped derivation over the fee budget"},
      {"ineq_chain.nfp", "Hence a < c.", "Hence c < a.", "3", "flipped inequality"},
      {"trig_special_values.nfp", "sin(pi/6) = 1/2", "sin(pi/6) = 1/3", "1", "wrong value"},
      {"explog_numbers.nfp", "ln(12) = 2*ln(2)", "ln(12) = 3*ln(2)", "1", "wrong coefficient"},
      {"deriv_polynomial.nfp", "Hence f'(1) = 5", "Hence f'(1) = 6", "3", "wrong value"},
      {"limit_rational.nfp", "(n^2 + 2) = 3.", "(n^2 + 2) = 2.", "1", "wrong limit"},
      {"epsilon_shift.nfp", "a_n + 1 < A + 1 + epsilon", "a_n + 1 > A + 1 + epsilon", "6", "flipped inequality"},
      {"squeeze_zero.nfp", "By the squeeze theorem", "By theorem LimitSum", "3", "wrong theorem name"},
      {"continuity_polynomial.nfp", "f(x) = 5.", "f(x) = 4.", "2", "wrong limit"},
  };
  return m;
}

// Labels of every statement in a proof, nested proofs included.
inline void collect_labels(const naproof::ProofPtr& p, std::set<std::string>& out) {
  using namespace naproof;
  for (auto cur = p; cur; cur = rest_of(*cur)) {
    out.insert(cur->label);
    std::visit(
        [&](const auto& n) {
          using T = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<T, PoseAndProve> || std::is_same_v<T, ProveSuffice> ||
                        std::is_same_v<T, ConclAndProve>)
            collect_labels(n.subproof, out);
          else if constexpr (std::is_same_v<T, PosePartialProof>)
            collect_labels(n.partial, out);
        },
        cur->node);
  }
}

}  // namespace testutil
