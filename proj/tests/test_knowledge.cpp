#include <doctest.h>

#include "naproof/ast_ops.hpp"
#include "naproof/knowledge.hpp"
#include "naproof/parser.hpp"
#include "naproof/solvers.hpp"

using namespace naproof;

namespace {

ProofGoal goal_with(std::initializer_list<const char*> premises, const char* conclusion = "true") {
  ProofGoal g;
  int i = 0;
  for (const char* p : premises) g.premises.push_back({std::to_string(++i), prop_of(p)});
  g.conclusion = prop_of(conclusion);
  return g;
}

}  // namespace

TEST_CASE("first-order matching binds metavariables consistently") {
  auto s = match_pattern(prop_of("x + y = y + x"), prop_of("2*a + 1 = 1 + 2*a"), {"x", "y"});
  REQUIRE(s);
  CHECK(equal(s->terms.at("x"), term_of("2*a")));
  CHECK(equal(s->terms.at("y"), mk::num(1)));
  CHECK_FALSE(match_pattern(prop_of("x + x = 0"), prop_of("a + b = 0"), {"x"}));
  CHECK_FALSE(match_pattern(prop_of("x + 1 = 0"), prop_of("a + 2 = 0"), {"x"}));
}

TEST_CASE("metavariables applied to bound variables match sequences") {
  auto s = match_pattern(prop_of("lim_{n -> inf} a_n = A"), prop_of("lim_{k -> inf} (1/k + 2) = 2"), {"a", "A"});
  REQUIRE(s);
  CHECK(equal(s->terms.at("A"), mk::num(2)));
  auto inst = instantiate(prop_of("for every n, a_n > 0"), *s);
  CHECK(alpha_equal(inst, prop_of("for every n, 1/n + 2 > 0")));
}

TEST_CASE("instantiation avoids capture") {
  Substitution s;
  s.terms["y"] = term_of("n + 1");
  auto inst = instantiate(prop_of("for every n, n > y"), s);
  auto q = as_quant(inst, Quantifier::Forall);
  REQUIRE(q);
  CHECK(q->var != "n");
  CHECK(free_vars(inst) == VarSet{"n"});
}

TEST_CASE("library parsing and errors") {
  auto lib = parse_library("theorem Pos\nvars: x\npremise: x > 1\nconclusion: x > 0\n\n"
                           "definition Even\nvars: k\nconclusion: k = k\n");
  REQUIRE(lib.entries().size() == 2);
  CHECK(lib.find("Pos")->kind == KnowledgeKind::Theorem);
  CHECK(lib.find("Even")->kind == KnowledgeKind::Definition);
  CHECK(lib.find("Pos")->premises.size() == 1);

  CHECK_THROWS_AS(parse_library("theorem A\nvars: x\nconclusion: y = 1\n"), LibraryError);
  CHECK_THROWS_AS(parse_library("theorem A\nconclusion: 1 = 1\n\ntheorem A\nconclusion: 2 = 2\n"), LibraryError);
  CHECK_THROWS_AS(parse_library("theorem A\nvars: x\npremise: x >\nconclusion: x = x\n"), LibraryError);
  try {
    parse_library("theorem A\nconclusion: 1 = 1\nbogus: 1\n", "lib.nfl");
    FAIL("expected an error");
  } catch (const LibraryError& e) {
    CHECK(e.line == 3);
    CHECK(std::string(e.what()).find("lib.nfl") != std::string::npos);
  }
}

TEST_CASE("disabling hides an entry") {
  auto lib = core_library();
  REQUIRE(lib.find("SupremumTheorem"));
  CHECK(lib.disable("SupremumTheorem"));
  CHECK(lib.find("SupremumTheorem") == nullptr);
  CHECK(lib.find_any("SupremumTheorem") != nullptr);
  CHECK_FALSE(lib.disable("NoSuchTheorem"));
}

TEST_CASE("merging rejects duplicate names") {
  auto a = core_library();
  auto b = parse_library("theorem SupremumTheorem\nconclusion: 1 = 1\n");
  CHECK_THROWS_AS(a.merge(b), LibraryError);
}

TEST_CASE("theorem application: conclusion match and premise discharge") {
  auto lib = core_library();
  auto reg = default_registry();
  SolverAccess access{&reg, kDefaultBudget};
  const auto* sup = lib.find("SupremumTheorem");
  REQUIRE(sup);

  auto with = goal_with({"{a_n | n : true} is bounded above"});
  auto r = apply_theorem(*sup, prop_of("there exists A such that A = sup {a_n | n : true}"), with, access);
  CHECK(r.accepted);

  auto without = goal_with({"{a_n | n : true} is monotonically increasing"});
  r = apply_theorem(*sup, prop_of("there exists A such that A = sup {a_n | n : true}"), without, access);
  CHECK(r.applicable);
  CHECK_FALSE(r.accepted);

  r = apply_theorem(*sup, prop_of("x = 1"), with, access);
  CHECK_FALSE(r.applicable);
}

TEST_CASE("premise-only metavariables are found among the premises") {
  auto lib = core_library();
  auto reg = default_registry();
  SolverAccess access{&reg, kDefaultBudget};
  const auto* squeeze = lib.find("SqueezeTheorem");
  REQUIRE(squeeze);
  auto g = goal_with({"lim_{n -> inf} u_n = 0", "lim_{n -> inf} w_n = 0", "for every n, u_n <= v_n and v_n <= w_n"});
  CHECK(apply_theorem(*squeeze, prop_of("lim_{n -> inf} v_n = 0"), g, access).accepted);
  auto bad = goal_with({"lim_{n -> inf} u_n = 0", "lim_{n -> inf} w_n = 1", "for every n, u_n <= v_n and v_n <= w_n"});
  CHECK_FALSE(apply_theorem(*squeeze, prop_of("lim_{n -> inf} v_n = 0"), bad, access).accepted);
}

TEST_CASE("single-premise definitions unfold") {
  auto lib = core_library();
  auto reg = default_registry();
  SolverAccess access{&reg, kDefaultBudget};
  const auto* def = lib.find("SeqLimit");
  REQUIRE(def);
  auto g = goal_with({"lim_{n -> inf} u_n = L"});
  auto unfolded = prop_of("for every epsilon, epsilon > 0 implies there exists N such that for every n, n > N implies "
                          "L - epsilon < u_n < L + epsilon");
  CHECK(apply_theorem(*def, unfolded, g, access).accepted);
  CHECK_FALSE(apply_theorem(*def, unfolded, goal_with({}), access).accepted);
}

TEST_CASE("known premises are found up to conjunction and renaming") {
  auto g = goal_with({"x > 0 and (for every k, k = k)", "y = 2"});
  CHECK(find_known(g, prop_of("y = 2")) == 1);
  CHECK(find_known(g, prop_of("for every m, m = m")) == 0);
  CHECK(find_known(g, prop_of("x < 0")) == -1);
}
