#include "solver_impl.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace naproof {

SolveResult SolveResult::decomposed(std::vector<PropPtr> ps) {
  if (ps.empty()) return accepted();
  return {Kind::Decomposed, std::move(ps)};
}

const SolverSpec* Registry::find(const std::string& name) const {
  for (const auto& s : solvers)
    if (s.name == name) return &s;
  return nullptr;
}

SolverSpec* Registry::find(const std::string& name) {
  for (auto& s : solvers)
    if (s.name == name) return &s;
  return nullptr;
}

bool Registry::remove(const std::string& name) {
  auto it = std::remove_if(solvers.begin(), solvers.end(),
                           [&](const SolverSpec& s) { return s.name == name; });
  bool found = it != solvers.end();
  solvers.erase(it, solvers.end());
  return found;
}

std::vector<const SolverSpec*> usable_list(const Registry& registry, const PropPtr& p) {
  std::vector<std::pair<int, const SolverSpec*>> conditional, general;
  for (const auto& s : registry.solvers) {
    if (s.conditional()) {
      int prio = s.priority(p);
      if (prio > 0) conditional.emplace_back(prio, &s);
    } else {
      general.emplace_back(s.default_priority, &s);
    }
  }
  auto by_priority = [](const auto& a, const auto& b) { return a.first > b.first; };
  std::stable_sort(conditional.begin(), conditional.end(), by_priority);
  std::stable_sort(general.begin(), general.end(), by_priority);
  std::vector<const SolverSpec*> out;
  for (const auto& [p_, s] : conditional) out.push_back(s);
  for (const auto& [p_, s] : general) out.push_back(s);
  return out;
}

namespace {

constexpr std::size_t kTraceLimit = 4096;

struct Run {
  const Registry& registry;
  const ProofGoal& goal;
  const CallObserver& observer;
  std::vector<TraceEntry>& trace;

  void note(int depth, int budget, const SolverSpec& s, const PropPtr& p, const char* outcome) {
    if (trace.size() < kTraceLimit) trace.push_back({depth, budget, s.name, p, outcome});
  }

  bool manage(int budget, const PropPtr& p, int depth, const SolverSpec* parent,
              const PropPtr& parent_prop) {
    if (observer) observer({depth, budget, p, parent, parent_prop});
    if (budget <= 0) return false;
    for (const SolverSpec* s : usable_list(registry, p)) {
      SolveResult r;
      try {
        r = s->solve(goal, p);
      } catch (const std::exception&) {
        r = SolveResult::pass(p);
      }
      if (r.kind == SolveResult::Kind::Accepted ||
          (r.kind == SolveResult::Kind::Decomposed && r.props.empty())) {
        note(depth, budget, *s, p, "accepted");
        return true;
      }
      if (r.kind == SolveResult::Kind::Rejected) {
        note(depth, budget, *s, p, "rejected");
        return false;
      }
      bool self = std::any_of(r.props.begin(), r.props.end(),
                              [&](const PropPtr& q) { return alpha_equal(q, p); });
      if (self) {
        note(depth, budget, *s, p, "pruned");
        continue;
      }
      note(depth, budget, *s, p, "decomposed");
      bool all = true;
      for (const auto& q : r.props) {
        if (!manage(budget - s->fee, q, depth + 1, s, p)) {
          all = false;
          break;
        }
      }
      if (all) return true;
      note(depth, budget, *s, p, "failed");
    }
    return false;
  }
};

}  // namespace

SolverVerdict solver_manager(int budget, const Registry& registry, const ProofGoal& goal,
                             const PropPtr& p, const CallObserver& observer) {
  SolverVerdict v;
  Run run{registry, goal, observer, v.trace};
  v.accepted = run.manage(budget, p, 0, nullptr, nullptr);
  return v;
}

std::vector<std::string> builtin_solver_names() {
  return {"syntactic", "logic",          "chain", "polynomial", "rational",  "derivative",
          "limit",     "limit_rational", "trig",  "explog",     "linear"};
}

std::optional<SolverSpec> builtin_solver(const std::string& name) {
  using namespace detail;
  if (name == "syntactic") return syntactic_solver();
  if (name == "logic") return logic_solver();
  if (name == "chain") return chain_solver();
  if (name == "polynomial") return polynomial_solver();
  if (name == "rational") return rational_solver();
  if (name == "linear") return linear_solver();
  if (name == "limit") return limit_solver();
  if (name == "limit_rational") return limit_rational_solver();
  if (name == "trig") return trig_solver();
  if (name == "explog") return explog_solver();
  if (name == "derivative") return derivative_solver();
  return std::nullopt;
}

Registry default_registry() {
  Registry r;
  for (const auto& n : builtin_solver_names()) r.solvers.push_back(*builtin_solver(n));
  return r;
}

Registry apply_solver_config(const Registry& base, const std::string& text,
                             const std::string& source) {
  Registry r = base;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw SolverConfigError(source + ":" + std::to_string(lineno) + ": error: " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> w;
    for (std::string x; words >> x;) w.push_back(x);
    if (w.empty()) continue;
    if (w[0] != "solver" || w.size() < 3) fail("expected 'solver <name> on|off [fee=<n>] [priority=<n>]'");
    const auto& name = w[1];
    if (w[2] == "off") {
      if (w.size() > 3) fail("options are not allowed after 'off'");
      if (!r.remove(name) && !builtin_solver(name)) fail("unknown solver '" + name + "'");
      continue;
    }
    if (w[2] != "on") fail("expected 'on' or 'off' after the solver name");
    SolverSpec* s = r.find(name);
    if (!s) {
      auto b = builtin_solver(name);
      if (!b) fail("unknown solver '" + name + "'");
      r.solvers.push_back(*b);
      s = &r.solvers.back();
    }
    for (std::size_t i = 3; i < w.size(); ++i) {
      auto eq = w[i].find('=');
      if (eq == std::string::npos) fail("expected key=value, got '" + w[i] + "'");
      auto key = w[i].substr(0, eq);
      int value = 0;
      try {
        std::size_t used = 0;
        value = std::stoi(w[i].substr(eq + 1), &used);
        if (used != w[i].size() - eq - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail("invalid number in '" + w[i] + "'");
      }
      if (key == "fee") {
        if (value < 1) fail("fee must be at least 1");
        s->fee = value;
      } else if (key == "priority") {
        if (value < 0) fail("priority must be non-negative");
        s->default_priority = value;
      } else {
        fail("unknown option '" + key + "'");
      }
    }
  }
  return r;
}

Registry load_solver_config(const Registry& base, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SolverConfigError(path + ": error: cannot read solver configuration");
  std::stringstream ss;
  ss << in.rdbuf();
  return apply_solver_config(base, ss.str(), path);
}

}  // namespace naproof
