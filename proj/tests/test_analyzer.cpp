#include <doctest.h>

#include "test_util.hpp"

#include "naproof/analyzer.hpp"
#include "naproof/ast_ops.hpp"
#include "naproof/parser.hpp"
#include "naproof/sexpr.hpp"

#include <algorithm>

using namespace naproof;

namespace {

// Analyzed output as emitted by the CLI: statement line, then the proof.
std::string emitted(const AnalysisOutcome& a) { return to_sexpr(a.initial_goal.conclusion) + "\n" + to_sexpr(a.proof) + "\n"; }

int count_kind(const std::vector<AnalysisNote>& notes, const std::string& kind) {
  return static_cast<int>(std::count_if(notes.begin(), notes.end(), [&](const auto& n) { return n.kind == kind; }));
}

}  // namespace

TEST_CASE("running example: exactly two existential introductions") {
  auto d = testutil::document(testutil::slurp(testutil::corpus("monotone_convergence.nfp")));
  auto a = analyze(d.proof, d.theorem);
  CHECK(emitted(a) == testutil::slurp(testutil::golden("monotone_convergence.analyzed.sexpr")));

  std::vector<std::string> introduced;
  for (const auto& n : a.notes)
    if (n.kind == "hcds-exist-var") introduced.push_back(n.description);
  REQUIRE(introduced.size() == 2);
  std::sort(introduced.begin(), introduced.end());
  CHECK(introduced[0].find("introduced A ") == 0);
  CHECK(introduced[1].find("introduced N ") == 0);

  auto s = to_sexpr(a.proof);
  auto count = [&](const std::string& needle) {
    int c = 0;
    for (auto at = s.find(needle); at != std::string::npos; at = s.find(needle, at + 1)) ++c;
    return c;
  };
  CHECK(count("AExistVar") == 2);
  CHECK(count("(AExistVar \"A\")") == 1);
  CHECK(count("(AExistVar \"N\")") == 1);
}

TEST_CASE("analysis is the identity on an already rigorous proof") {
  auto d = testutil::document(testutil::slurp(testutil::corpus("monotone_convergence.nfp")));
  auto a = analyze(d.proof, d.theorem);
  auto b = analyze(a.proof, a.initial_goal.conclusion);
  CHECK(proof_equal(a.proof, b.proof, true));
  CHECK(equal(a.initial_goal.conclusion, b.initial_goal.conclusion));
  CHECK(b.notes.empty());
}

TEST_CASE("parse of the running example matches the frozen tree") {
  auto d = testutil::document(testutil::slurp(testutil::corpus("monotone_convergence.nfp")));
  auto raw = testutil::slurp(testutil::golden("monotone_convergence.ast.sexpr"));
  CHECK(to_sexpr(d.theorem) + "\n" + to_sexpr(d.proof) + "\n" == raw);
}

TEST_CASE("HCDS introduces witnesses only when the name is free afterwards") {
  auto used = proof_of("By theorem T, there exists N such that N > 0.\nHence N + 1 > 1.\nwhich proves the theorem.");
  auto r = hcds(used);
  CHECK(to_sexpr(r).find("(AExistVar \"N\")") != std::string::npos);

  auto unused = proof_of("By theorem T, there exists N such that N > 0.\nwhich proves the theorem.");
  CHECK(proof_equal(hcds(unused), unused, true));

  auto already = proof_of("By theorem T, there exists N such that N > 0.\nObtain N.\nHence N + 1 > 1.\n"
                          "which proves the theorem.");
  std::vector<AnalysisNote> notes;
  CHECK(proof_equal(hcds(already, &notes), already, true));
  CHECK(notes.empty());
}

TEST_CASE("HON: f(x) with x unbound becomes a lambda definition") {
  std::vector<AnalysisNote> notes;
  auto p = hon(prop_of("f(x) = x^2 + 1"), ScopeEnv{}, &notes);
  CHECK(equal(p, read_prop(R"((PBinPred REq (TVar "f") (TBinder LambdaB "x" (TBinOp Add (TBinOp Pow (TVar "x") (TNum 2)) (TNum 1)))))")));
  CHECK(count_kind(notes, "hon-lambda") == 1);
}

TEST_CASE("HON: f(x) with x bound stays an application") {
  std::vector<AnalysisNote> notes;
  auto src = prop_of("f(x) = x^2 + 1");
  auto p = hon(src, ScopeEnv{}.with("x"), &notes);
  CHECK(equal(p, src));
  CHECK(notes.empty());

  auto q = hon(prop_of("for every x, f(x) = x^2"), ScopeEnv{}, &notes);
  CHECK(equal(q, read_prop(R"((PQuant QForall "x" (PBinPred REq (TApply (TVar "f") (TVar "x")) (TBinOp Pow (TVar "x") (TNum 2)))))")));
  CHECK(notes.empty());
}

TEST_CASE("HON: {a_n} with n unbound is the range of the sequence") {
  std::vector<AnalysisNote> notes;
  auto p = hon(prop_of("{a_n} is bounded above"), ScopeEnv{}, &notes);
  CHECK(equal(p, read_prop(R"((PUnPred UpperBounded (TSet ["n"] (TApply (TVar "a") (TVar "n")) PTrue)))")));
  CHECK(count_kind(notes, "hon-range-set") == 1);
}

TEST_CASE("HON: {a_n} with n bound is a singleton") {
  std::vector<AnalysisNote> notes;
  auto src = prop_of("{a_n} is bounded above");
  auto p = hon(src, ScopeEnv{}.with("n"), &notes);
  CHECK(equal(p, read_prop(R"((PUnPred UpperBounded (TSet [] (TApply (TVar "a") (TVar "n")) PTrue)))")));
  CHECK(notes.empty());
}

TEST_CASE("HON inside a proof follows the binders of earlier steps") {
  auto proof = proof_of("Let n.\nHence {a_n} is bounded above.\nwhich proves the theorem.");
  auto r = hon(proof, ScopeEnv{});
  CHECK(to_sexpr(r).find("(TSet [] (TApply (TVar \"a\") (TVar \"n\")) PTrue)") != std::string::npos);

  auto open = proof_of("Let m.\nHence {a_n} is bounded above.\nwhich proves the theorem.");
  CHECK(to_sexpr(hon(open, ScopeEnv{})).find("(TSet [\"n\"]") != std::string::npos);
}

TEST_CASE("initial goal and free variables") {
  auto g = build_initial_goal(prop_of("for every x, x = x"));
  CHECK(g.premises.empty());
  CHECK(equal(g.conclusion, prop_of("for every x, x = x")));
  auto fv = proof_free_vars(proof_of("Let x.\nSet y = x + z.\nHence y = w.\nwhich proves the theorem."));
  CHECK(fv == VarSet{"w", "z"});
}
