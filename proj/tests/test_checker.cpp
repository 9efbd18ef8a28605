#include <doctest.h>

#include "mutations.hpp"
#include "running_example.hpp"
#include "test_util.hpp"

#include "naproof/ast_ops.hpp"
#include "naproof/checker.hpp"
#include "naproof/knowledge.hpp"
#include "naproof/parser.hpp"
#include "naproof/printer.hpp"
#include "naproof/solvers.hpp"

#include <json.hpp>

using namespace naproof;
using namespace running_example;

namespace {

struct Env {
  Library lib = core_library();
  Registry reg = default_registry();
  CheckerConfig cfg() const { return {&lib, &reg, kDefaultBudget}; }
};

const StepVerdict& verdict(const CheckReport& r, const std::string& label) {
  for (const auto& v : r.verdicts)
    if (v.label == label) return v;
  FAIL("no verdict for " << label);
  throw std::logic_error("unreachable");
}

std::string dump(const ProofGoal& g) { return pretty_print(g); }

CheckReport check_running_example(const Env& env) {
  return testutil::check_text(testutil::slurp(testutil::corpus("monotone_convergence.nfp")), env.cfg());
}

}  // namespace

TEST_CASE("running example is accepted step by step") {
  Env env;
  auto r = check_running_example(env);
  CHECK(r.completed);
  for (const auto& v : r.verdicts) CHECK_MESSAGE(v.accepted, v.label << ": " << v.message);
  CHECK(r.verdicts.back().qed);
}

TEST_CASE("goal after applying the supremum theorem") {
  Env env;
  auto r = check_running_example(env);
  const auto& v = verdict(r, "2");
  CHECK(v.rule == "ApplyTheorem");
  CHECK_MESSAGE(same_premises(v.goal_after, after_supremum()), dump(v.goal_after));
  CHECK(alpha_equal(v.goal_after.conclusion, prop_of(kGoal)));
}

TEST_CASE("goal inside the subgoal proof") {
  Env env;
  auto r = check_running_example(env);
  const auto& v = verdict(r, "3");
  CHECK(v.rule == "Subgoal");
  REQUIRE(v.nested_goal);
  CHECK_MESSAGE(same_premises(*v.nested_goal, subgoal_premises()), dump(*v.nested_goal));
  CHECK(alpha_equal(v.nested_goal->conclusion, prop_of(kLim)));
  // Afterwards the subgoal is a premise and the original conclusion is back.
  CHECK(find_known(v.goal_after, prop_of(kLim)) >= 0);
  CHECK(alpha_equal(v.goal_after.conclusion, prop_of(kGoal)));
}

TEST_CASE("goals around the partial proof") {
  Env env;
  auto r = check_running_example(env);
  const auto& pose = verdict(r, "4");
  REQUIRE(pose.nested_goal);
  CHECK(pose.nested_goal->is_hole());
  CHECK_MESSAGE(same_premises(*pose.nested_goal, {kBounded, kIncreasing, kSup, kSupA, "epsilon > 0"}),
                dump(*pose.nested_goal));

  const auto& last = verdict(r, "7");
  CHECK(last.goal_after.is_hole());
  CHECK_MESSAGE(same_premises(last.goal_after, partial_end()), dump(last.goal_after));

  CHECK_MESSAGE(same_premises(pose.goal_after, after_partial()), dump(pose.goal_after));
  CHECK(alpha_equal(pose.goal_after.conclusion, prop_of(kLim)));
}

TEST_CASE("mutations are rejected at the corrupted step and checking continues") {
  Env env;
  for (const auto& m : testutil::mutations()) {
    INFO(m.file << ": " << m.kind);
    auto text = testutil::replace_once(testutil::slurp(testutil::corpus(m.file)), m.from, m.to);
    auto d = testutil::document(text);
    auto analyzed = analyze(d.proof, d.theorem);
    auto r = check(analyzed, env.cfg());
    CHECK_FALSE(r.completed);
    const auto& bad = verdict(r, m.rejected_label);
    CHECK_FALSE(bad.accepted);
    std::set<std::string> labels;
    testutil::collect_labels(analyzed.proof, labels);
    for (const auto& l : labels) {
      bool seen = std::any_of(r.verdicts.begin(), r.verdicts.end(), [&](const auto& v) { return v.label == l; });
      CHECK_MESSAGE(seen, "no verdict for step " << l);
    }
  }
}

TEST_CASE("the skipped derivation passes with a larger budget") {
  Env env;
  const auto& m = testutil::mutations()[4];
  REQUIRE(m.file == "limit_product_chain.nfp");
  auto text = testutil::replace_once(testutil::slurp(testutil::corpus(m.file)), m.from, m.to);
  CheckerConfig generous{&env.lib, &env.reg, 60};
  CHECK(testutil::check_text(text, generous).completed);
  CHECK_FALSE(testutil::check_text(text, env.cfg()).completed);
}

TEST_CASE("disabled theorems and solvers are named in the message") {
  Env env;
  env.lib.disable("SupremumTheorem");
  auto r = check_running_example(env);
  CHECK_FALSE(r.completed);
  const auto& v = verdict(r, "2");
  CHECK_FALSE(v.accepted);
  CHECK(v.message.find("SupremumTheorem") != std::string::npos);

  Env env2;
  env2.reg = apply_solver_config(env2.reg, "solver limit off\nsolver limit_rational off\n");
  auto r2 = testutil::check_text(testutil::slurp(testutil::corpus("limit_rational.nfp")), env2.cfg());
  CHECK_FALSE(r2.completed);
  const auto& v2 = verdict(r2, "1");
  CHECK(v2.message.find("limit") != std::string::npos);
}

TEST_CASE("single steps") {
  Env env;
  auto cfg = env.cfg();
  ProofGoal g = build_initial_goal(prop_of("for every x, x > 0 implies x + 1 > 1"));

  auto intro = step(g, proof_of("Let x."), cfg);
  CHECK(intro.accepted);
  CHECK(intro.rule == "Intros");
  REQUIRE(intro.next);
  CHECK(alpha_equal(intro.next->conclusion, prop_of("x > 0 implies x + 1 > 1")));

  auto sup = step(*intro.next, proof_of("Assume x > 0."), cfg);
  CHECK(sup.accepted);
  REQUIRE(sup.next);
  CHECK(alpha_equal(sup.next->conclusion, prop_of("x + 1 > 1")));

  auto wrong = step(*intro.next, proof_of("Assume x > 1."), cfg);
  CHECK_FALSE(wrong.accepted);

  auto fwd = step(*sup.next, proof_of("Hence x + 1 > 1."), cfg);
  CHECK(fwd.accepted);
  REQUIRE(fwd.next);
  CHECK(find_known(*fwd.next, prop_of("x + 1 > 1")) >= 0);

  auto done = step(*fwd.next, proof_of("which proves the theorem."), cfg);
  CHECK(done.accepted);
  CHECK_FALSE(done.next.has_value());
}

TEST_CASE("suffices, contradiction and set") {
  Env env;
  auto ok = [&](const char* text) { return testutil::check_text(text, env.cfg()).completed; };
  CHECK(ok("Theorem: for every x, x > 2 implies 2*x > 4\nProof:\nLet x.\nAssume x > 2.\n"
           "It suffices to show x > 2.\nwhich proves the theorem.\n"));
  CHECK_FALSE(ok("Theorem: for every x, x > 0 implies 2*x > 4\nProof:\nLet x.\nAssume x > 0.\n"
                 "It suffices to show x > 1.\nwhich proves the theorem.\n"));
  CHECK(ok("Theorem: for every x, x > 3 implies not (x < 2)\nProof:\nLet x.\nAssume x > 3.\n"
           "Suppose for contradiction x < 2.\nHence 3 < 2.\nwhich proves the theorem.\n"));
  CHECK(ok("Theorem: for every x, (x + 1)^2 >= 0\nProof:\nLet x.\nSet y = x + 1.\nHence y^2 >= 0.\n"
           "which proves the theorem.\n"));
}

TEST_CASE("concluding too early is rejected") {
  Env env;
  auto r = testutil::check_text("Theorem: for every x, x > 0 implies x > 1\nProof:\nLet x.\nAssume x > 0.\n"
                                "which proves the theorem.\n",
                                env.cfg());
  CHECK_FALSE(r.completed);
  CHECK_FALSE(r.verdicts.back().accepted);
}

TEST_CASE("well-definedness obligations") {
  auto obs = well_definedness_obligations(term_of("1/(x - 1) + ln(y) + sqrt(z)"));
  CHECK(obs.size() == 3);
  CHECK(well_definedness_obligations(term_of("x^2 + 1")).empty());
}

TEST_CASE("reports") {
  Env env;
  auto r = check_running_example(env);
  auto j = nlohmann::json::parse(report_json(r, "mc.nfp"));
  CHECK(j["file"] == "mc.nfp");
  CHECK(j["completed"] == true);
  REQUIRE(j["steps"].size() == r.verdicts.size());
  CHECK(j["steps"][0]["rule"] == "Intros");
  CHECK(j["steps"][0]["span"]["start"]["line"] == 4);
  CHECK(nlohmann::ordered_json::parse(report_json(r, "mc.nfp")).dump(2) + "\n" == report_json(r, "mc.nfp"));
  auto text = report_text(r, "mc.nfp");
  CHECK(text.find("mc.nfp:6:1: (2) ApplyTheorem accepted") != std::string::npos);
  CHECK(text.find("mc.nfp: proof complete") != std::string::npos);
}
