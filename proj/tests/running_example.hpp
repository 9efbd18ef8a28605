#pragma once

#include "naproof/ast_ops.hpp"
#include "naproof/checker.hpp"
#include "naproof/parser.hpp"

#include <algorithm>
#include <string>
#include <vector>

// Goal snapshots of the monotone convergence proof, written out by hand.
namespace running_example {

inline const char* kBounded = "{a_n | n : true} is bounded above";
inline const char* kIncreasing = "{a_n | n : true} is monotonically increasing";
inline const char* kSup = "there exists A such that A = sup {a_n | n : true}";
inline const char* kSupA = "A = sup {a_n | n : true}";
inline const char* kGoal = "there exists A such that lim_{n -> inf} a_n = A";
inline const char* kLim = "lim_{n -> inf} a_n = A";

// After the supremum theorem step.
inline std::vector<std::string> after_supremum() { return {kBounded, kIncreasing, kSup}; }

// Premises of the subgoal proof; its conclusion is kLim.
inline std::vector<std::string> subgoal_premises() { return {kBounded, kIncreasing, kSup, kSupA}; }

// Inside the partial proof, after its last derived step; the conclusion is the hole.
inline std::vector<std::string> partial_end() {
  return {kBounded,
          kIncreasing,
          kSup,
          kSupA,
          "epsilon > 0",
          "there exists N such that a_N > A - epsilon",
          "a_N > A - epsilon",
          "for every n, n > N implies a_n > a_N",
          "for every n, n > N implies a_n < A",
          "for every n, n > N implies A - epsilon < a_n < A + epsilon"};
}

// After the partial proof: the derived premises carry the epsilon dependency.
inline std::vector<std::string> after_partial() {
  return {kBounded,
          kIncreasing,
          kSup,
          kSupA,
          "for every epsilon, epsilon > 0 implies there exists N such that a_N > A - epsilon",
          "for every epsilon, epsilon > 0 implies there exists N such that for every n, n > N implies a_n > a_N",
          "for every epsilon, epsilon > 0 implies there exists N such that for every n, n > N implies a_n < A",
          "for every epsilon, epsilon > 0 implies there exists N such that for every n, n > N implies "
          "A - epsilon < a_n < A + epsilon"};
}

// Premise multisets up to alpha-equivalence; labels are ignored.
inline bool same_premises(const naproof::ProofGoal& g, const std::vector<std::string>& expected) {
  using namespace naproof;
  std::vector<PropPtr> left;
  for (const auto& p : g.premises) left.push_back(p.prop);
  if (left.size() != expected.size()) return false;
  for (const auto& e : expected) {
    auto want = prop_of(e);
    auto it = std::find_if(left.begin(), left.end(), [&](const PropPtr& p) { return alpha_equal(p, want); });
    if (it == left.end()) return false;
    left.erase(it);
  }
  return true;
}

inline const naproof::StepVerdict* find_verdict(const naproof::CheckReport& r, const std::string& label) {
  for (const auto& v : r.verdicts)
    if (v.label == label) return &v;
  return nullptr;
}

}  // namespace running_example
