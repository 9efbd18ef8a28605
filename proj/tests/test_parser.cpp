#include <doctest.h>

#include "naproof/ast_ops.hpp"
#include "naproof/parser.hpp"
#include "naproof/printer.hpp"
#include "naproof/sexpr.hpp"

#include <string>

using namespace naproof;

namespace {

// Expected trees are written by hand in the constructor notation and read back.
void same_term(const std::string& surface, const std::string& expected) {
  INFO(surface);
  auto got = term_of(surface);
  CHECK_MESSAGE(equal(got, read_term(expected)), to_sexpr(got));
}

void same_prop(const std::string& surface, const std::string& expected) {
  INFO(surface);
  auto got = prop_of(surface);
  CHECK_MESSAGE(equal(got, read_prop(expected)), to_sexpr(got));
}

std::string first_statement(const std::string& text) {
  auto p = proof_of(text);
  REQUIRE(p);
  auto s = to_sexpr(p);
  return s.substr(0, s.find('\n'));
}

}  // namespace

TEST_CASE("arithmetic precedence and associativity") {
  same_term("1 + 2*x", R"((TBinOp Add (TNum 1) (TBinOp Mul (TNum 2) (TVar "x"))))");
  same_term("a - b - c", R"((TBinOp Sub (TBinOp Sub (TVar "a") (TVar "b")) (TVar "c")))");
  same_term("2^3^2", R"((TBinOp Pow (TNum 2) (TBinOp Pow (TNum 3) (TNum 2))))");
  same_term("-x^2", R"((TUnOp Neg (TBinOp Pow (TVar "x") (TNum 2))))");
  same_term("x/(y + 1)", R"((TBinOp Div (TVar "x") (TBinOp Add (TVar "y") (TNum 1))))");
}

TEST_CASE("function symbols, constants and subscripts") {
  same_term("sin(x)", R"((TUnOp Sin (TVar "x")))");
  same_term("ln(x) + e", R"((TBinOp Add (TUnOp Ln (TVar "x")) (TConst "e")))");
  same_term("a_n", R"((TApply (TVar "a") (TVar "n")))");
  same_term("f(x + 1)", R"((TApply (TVar "f") (TBinOp Add (TVar "x") (TNum 1))))");
  same_term("Fun x -> x^2", R"((TBinder LambdaB "x" (TBinOp Pow (TVar "x") (TNum 2))))");
}

TEST_CASE("limits and derivatives") {
  same_term("lim_{n -> inf} a_n",
            R"((TBinOp RLim (TInfty PositiveInfty) (TBinder LambdaB "n" (TApply (TVar "a") (TVar "n")))))");
  same_term("lim_{x -> 0} sin(x)/x",
            R"((TBinOp RLim (TNum 0) (TBinder LambdaB "x" (TBinOp Div (TUnOp Sin (TVar "x")) (TVar "x")))))");
  same_term("f'(x)", R"((TApply (TUnOp Deriv (TVar "f")) (TVar "x")))");
  same_term("d/dx (x^2)",
            R"((TApply (TUnOp Deriv (TBinder LambdaB "x" (TBinOp Pow (TVar "x") (TNum 2)))) (TVar "x")))");
}

TEST_CASE("propositions") {
  same_prop("x > 0 and y <= 1",
            R"((PBinOp CAnd (PBinPred RGt (TVar "x") (TNum 0)) (PBinPred RLe (TVar "y") (TNum 1))))");
  same_prop("a < b < c", R"((PLongOrder [RLt RLt] (TVar "a") (TVar "b") (TVar "c")))");
  same_prop("for every x, x^2 >= 0",
            R"((PQuant QForall "x" (PBinPred RGe (TBinOp Pow (TVar "x") (TNum 2)) (TNum 0))))");
  same_prop("there exists N such that N > 1",
            R"((PQuant QExists "N" (PBinPred RGt (TVar "N") (TNum 1))))");
  same_prop("x > 0 implies x != 0",
            R"((PBinOp CImply (PBinPred RGt (TVar "x") (TNum 0)) (PBinPred RNe (TVar "x") (TNum 0))))");
  same_prop("{a_n} is bounded above",
            R"((PUnPred UpperBounded (TSet [] (TApply (TVar "a") (TVar "n")) PTrue)))");
  same_prop("f is continuous at 2", R"((PBinPred ContinuousAt (TVar "f") (TNum 2)))");
}

TEST_CASE("proof statements map to the expected constructs") {
  CHECK(first_statement("Let x.") == R"((ProofAction (AIntros "x"))");
  CHECK(first_statement("Set y = x + 3.") ==
        R"((ProofAction (ASet "y" (TBinOp Add (TVar "x") (TNum 3))))");
  CHECK(first_statement("Assume x > 0.") == R"((ProofAction (ASuppose (PBinPred RGt (TVar "x") (TNum 0))))");
  CHECK(first_statement("By theorem SupremumTheorem, x = 1.") ==
        R"((PoseWithoutProof (FTheorem SupremumTheorem) (PBinPred REq (TVar "x") (TNum 1)))");
  CHECK(first_statement("Hence x = 1.") == R"((PoseWithoutProof FNoHint (PBinPred REq (TVar "x") (TNum 1)))");
  CHECK(first_statement("It suffices to show x = 1.") ==
        R"((ClaimSuffice BNoHint (PBinPred REq (TVar "x") (TNum 1)))");
  CHECK(first_statement("which proves the theorem.") == "(ConclWithoutProof FNoHint)");
}

TEST_CASE("labels and spans") {
  auto p = proof_of("Let x.\n(7) Hence x = x.\nwhich proves the theorem.");
  REQUIRE(p);
  CHECK(p->label == "h1");
  CHECK_FALSE(p->explicit_label);
  auto second = rest_of(*p);
  REQUIRE(second);
  CHECK(second->label == "7");
  CHECK(second->explicit_label);
  CHECK(second->span.start.line == 2);
  CHECK(second->span.start.column == 1);
}

TEST_CASE("partial proofs need their end marker") {
  auto ok = parse_proof(SourceDocument{"For every ε > 0 {\nHence ε > 0.\nThis ends the partial proof.\n}\n"
                                       "which proves the theorem."});
  CHECK(ok.ok());
  auto s = to_sexpr(*ok.value);
  CHECK(s.find("APoseVar \"epsilon\"") != std::string::npos);
  CHECK(s.find("EndPartialProof") != std::string::npos);
}

TEST_CASE("syntax errors carry a location") {
  auto r = parse_proof(SourceDocument{"Let x.\nHence x = = 1.\n"});
  REQUIRE_FALSE(r.ok());
  REQUIRE_FALSE(r.diagnostics.empty());
  CHECK(r.diagnostics[0].span.start.line == 2);
  CHECK(format_diagnostic(r.diagnostics[0], std::string("f.nfp")).rfind("f.nfp:2:", 0) == 0);

  auto t = parse_term("(x + 1");
  CHECK_FALSE(t.ok());
  CHECK_THROWS_AS(prop_of("x >"), ParseError);
}

TEST_CASE("document header") {
  auto d = parse_document(SourceDocument{"# comment\nTheorem: x = x\nProof:\nwhich proves the theorem.\n"});
  REQUIRE(d.ok());
  CHECK(equal(d.value->theorem, prop_of("x = x")));
  auto missing = parse_document(SourceDocument{"Proof:\nwhich proves the theorem.\n"});
  CHECK_FALSE(missing.ok());
}

TEST_CASE("custom keyword table") {
  auto base = KeywordTable::builtin();
  CHECK_FALSE(base.phrases_for("Let").empty());
  auto table = KeywordTable::from_string("Let\tconsider\n");
  auto r = parse_proof(SourceDocument{"Consider x.\n"}, table);
  REQUIRE(r.ok());
  CHECK(to_sexpr(*r.value).rfind(R"((ProofAction (AIntros "x"))", 0) == 0);
}

TEST_CASE("pretty printing round-trips") {
  for (const char* s : {"for every x, x > 0 implies (there exists y such that y^2 = x)",
                        "lim_{n -> inf} (1 + 1/n)^n = e", "a < b <= c", "not (x = 1) or y != 2",
                        "f'(x) = 2*x - sin(x)/(1 + x^2)", "{a_n} is monotonically increasing"}) {
    INFO(s);
    auto p = prop_of(s);
    CHECK(alpha_equal(prop_of(pretty_print(p)), p));
  }
  auto proof = proof_of("Let x.\n(1) Assume x > 1.\nSuppose x > 2 {\nHence x > 0.\nThis ends the partial proof.\n}\n"
                        "We use definition SeqLimit to show that x = x {\nwhich proves the proposition.\n}\n"
                        "which proves the theorem.");
  CHECK(proof_equal(proof_of(pretty_print(proof)), proof));
}

TEST_CASE("sexpr round-trips") {
  auto p = prop_of("for every e1, e1 > 0 implies |x - 1| < e1");
  CHECK(equal(read_prop(to_sexpr(p)), p));
  auto proof = proof_of("Let x.\nHence x = x.\nwhich proves the theorem.");
  CHECK(proof_equal(read_proof(to_sexpr(proof)), proof, true));
  CHECK_THROWS_AS(read_term("(TBinOp Add (TNum 1)"), SexprError);
}
