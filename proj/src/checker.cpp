#include "naproof/checker.hpp"

#include "naproof/algebra.hpp"
#include "naproof/printer.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace naproof {

// ---- well-definedness -------------------------------------------------------------

namespace {

void collect_wd(const TermPtr& t, std::vector<PropPtr>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TUnOpNode>) {
          collect_wd(n.arg, out);
          if (n.op == TermUnOp::Ln) out.push_back(mk::gt(n.arg, mk::num(0)));
          if (n.op == TermUnOp::Sqrt) out.push_back(mk::ge(n.arg, mk::num(0)));
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          collect_wd(n.left, out);
          if (n.op == TermBinOp::RLim) return;
          collect_wd(n.right, out);
          if (n.op == TermBinOp::Div) out.push_back(mk::ne(n.right, mk::num(0)));
        } else if constexpr (std::is_same_v<N, TApply>) {
          collect_wd(n.fn, out);
          collect_wd(n.arg, out);
        } else if constexpr (std::is_same_v<N, TInterval>) {
          collect_wd(n.lo, out);
          collect_wd(n.hi, out);
        }
      },
      t->node);
}

void collect_wd(const PropPtr& p, std::vector<PropPtr>& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PUnPred>) {
          collect_wd(n.arg, out);
        } else if constexpr (std::is_same_v<N, PBinPred>) {
          collect_wd(n.left, out);
          collect_wd(n.right, out);
        } else if constexpr (std::is_same_v<N, PLongOrder>) {
          for (const auto& t : n.terms) collect_wd(t, out);
        } else if constexpr (std::is_same_v<N, PUnOpNode>) {
          collect_wd(n.arg, out);
        } else if constexpr (std::is_same_v<N, PBinOpNode>) {
          collect_wd(n.left, out);
          // The right side of an implication may rely on its hypothesis.
          if (n.op != PropBinOp::CImply) collect_wd(n.right, out);
        }
      },
      p->node);
}

std::vector<PropPtr> dedupe(std::vector<PropPtr> ps) {
  std::vector<PropPtr> out;
  for (auto& p : ps)
    if (std::none_of(out.begin(), out.end(), [&](const PropPtr& q) { return alpha_equal(p, q); }))
      out.push_back(std::move(p));
  return out;
}

}  // namespace

std::vector<PropPtr> well_definedness_obligations(const TermPtr& t) {
  std::vector<PropPtr> out;
  collect_wd(t, out);
  return dedupe(std::move(out));
}

std::vector<PropPtr> well_definedness_obligations(const PropPtr& p) {
  std::vector<PropPtr> out;
  collect_wd(p, out);
  return dedupe(std::move(out));
}

// ---- the checker ------------------------------------------------------------------

namespace {

struct Thread {
  ProofGoal goal;
  bool qed = false;
  bool ok = true;
  bool ended = false;
  // Names introduced inside a partial proof, in order.
  std::vector<std::string> exist_locals;
  std::vector<std::pair<std::string, TermPtr>> set_locals;
};

struct Check {
  bool ok = true;
  std::string message;
};

std::string quoted(const PropPtr& p) { return "'" + pretty_print(p) + "'"; }

std::string method_name(const FwdMethod& m) {
  if (auto t = std::get_if<FTheorem>(&m)) return t->name;
  if (auto d = std::get_if<FDefinition>(&m)) return d->name;
  return {};
}

bool is_knowledge(const FwdMethod& m) {
  return std::holds_alternative<FTheorem>(m) || std::holds_alternative<FDefinition>(m);
}

std::string forward_rule(const FwdMethod& m) {
  if (is_knowledge(m)) return "ApplyTheorem";
  if (std::holds_alternative<FAddEqn>(m)) return "AddEqn";
  if (std::holds_alternative<FDeriBothTerms>(m)) return "DeriBothTerms";
  return "NoHint";
}

std::string conclusion_rule(const FwdMethod& m) { return is_knowledge(m) ? "ConclWithTheorem" : "Concl"; }

bool function_like(const TermPtr& t) {
  auto b = std::get_if<TBinder>(&t->node);
  return b && b->binder == Binder::LambdaB;
}

// Same value as expressions, lambdas compared body to body.
bool same_value(const TermPtr& a, const TermPtr& b) {
  if (alpha_equal(a, b)) return true;
  auto la = std::get_if<TBinder>(&a->node);
  auto lb = std::get_if<TBinder>(&b->node);
  if (la && lb) {
    if (la->binder != Binder::LambdaB || lb->binder != Binder::LambdaB) return false;
    return same_value(la->body, substitute(lb->body, lb->var, mk::var(la->var)));
  }
  if (la || lb) return false;
  auto x = to_ratfunc(a);
  auto y = to_ratfunc(b);
  return x && y && ratfunc_equal(*x, *y);
}

class Run {
 public:
  Run(const CheckerConfig& cfg, std::vector<StepVerdict>& out) : cfg_(cfg), out_(out) {}

  Thread run(ProofGoal goal, ProofPtr p, bool partial) {
    Thread t;
    t.goal = std::move(goal);
    while (p) {
      if (t.qed) {
        auto i = open(*p, rule_name(*p));
        close(i, t, false, "the goal is already proved");
        t.ok = false;
        p = rest_of(*p);
        continue;
      }
      p = apply(p, t, partial);
      if (t.ended) break;
    }
    return t;
  }

  // Checks one node, records its verdict, and returns the continuation.
  ProofPtr apply(const ProofPtr& node, Thread& t, bool partial) {
    return std::visit([&](const auto& n) { return visit(*node, n, t, partial); }, node->node);
  }

 private:
  const CheckerConfig& cfg_;
  std::vector<StepVerdict>& out_;

  std::size_t open(const ProofNode& n, std::string rule) {
    StepVerdict v;
    v.label = n.label;
    v.span = n.span;
    v.rule = std::move(rule);
    out_.push_back(std::move(v));
    return out_.size() - 1;
  }

  void close(std::size_t i, Thread& t, bool accepted, std::string message) {
    auto& v = out_[i];
    v.accepted = accepted;
    v.message = std::move(message);
    v.goal_after = t.goal;
    v.qed = t.qed;
    if (!accepted) t.ok = false;
  }

  static std::string rule_name(const ProofNode& n) {
    return std::visit(
        [](const auto& x) -> std::string {
          using N = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<N, ProofAction>) {
            static const char* names[] = {"Intros", "Exists", "Suppose", "Set", "SetProp", "ExistVar"};
            return names[x.action.index()];
          } else if constexpr (std::is_same_v<N, PoseWithoutProof>) {
            return forward_rule(x.method);
          } else if constexpr (std::is_same_v<N, PoseAndProve>) {
            return "Subgoal";
          } else if constexpr (std::is_same_v<N, ClaimSuffice>) {
            return "Suffice";
          } else if constexpr (std::is_same_v<N, ProveSuffice>) {
            return "SufficeWithProof";
          } else if constexpr (std::is_same_v<N, ConclWithoutProof> || std::is_same_v<N, ConclAndProve>) {
            return conclusion_rule(x.method);
          } else if constexpr (std::is_same_v<N, PosePartialProof>) {
            return std::holds_alternative<APoseVar>(x.pose) ? "PoseVar" : "PoseProp";
          } else {
            return "EndPartial";
          }
        },
        n.node);
  }

  static void add_premise(Thread& t, const std::string& label, const PropPtr& p) {
    for (const auto& c : conjuncts(p)) t.goal.premises.push_back({label, c});
  }

  // ---- deduction helpers ----

  Check deducible(const ProofGoal& g, const PropPtr& p, int budget) const {
    if (find_known(g, p) >= 0) return {};
    if (cfg_.registry && solver_manager(budget, *cfg_.registry, g, p).accepted) return {};
    return {false, "not deducible from the premises: " + quoted(p) + disabled_solvers(p)};
  }

  // Builtin solvers missing from the registry that would have been consulted for `p`.
  std::string disabled_solvers(const PropPtr& p) const {
    if (!cfg_.registry) return {};
    std::string names;
    for (const auto& name : builtin_solver_names()) {
      if (cfg_.registry->find(name)) continue;
      auto s = builtin_solver(name);
      if (s->conditional() && s->priority(p) <= 0) continue;
      names += (names.empty() ? "" : ", ") + name;
    }
    return names.empty() ? "" : " (disabled solvers: " + names + ")";
  }

  Check well_defined(const ProofGoal& g, const std::vector<PropPtr>& obligations) const {
    for (const auto& ob : obligations) {
      if (!deducible(g, ob, cfg_.budget).ok)
        return {false, "not well defined: cannot establish " + quoted(ob)};
    }
    return {};
  }

  Check knowledge(const ProofGoal& g, const std::string& name, const PropPtr& p) const {
    const TheoremEntry* e = cfg_.library ? cfg_.library->find_any(name) : nullptr;
    if (!e) return {false, "method inapplicable: unknown theorem or definition " + name};
    ApplyResult r;
    try {
      r = apply_theorem(*e, p, g, {cfg_.registry, cfg_.budget});
    } catch (const std::exception& ex) {
      return {false, std::string("method inapplicable: ") + ex.what()};
    }
    if (r.accepted) return {};
    if (!r.applicable) return {false, "method inapplicable: " + r.message};
    return {false, "not derivable by " + name + ": " + r.message};
  }

  static const Premise* labelled_equation(const ProofGoal& g, const std::string& label) {
    for (auto it = g.premises.rbegin(); it != g.premises.rend(); ++it)
      if (it->label == label && as_eq(it->prop)) return &*it;
    return nullptr;
  }

  Check add_eqn(const ProofGoal& g, const FAddEqn& m, const PropPtr& p) const {
    auto claim = as_eq(p);
    if (!claim) return {false, "method inapplicable: adding equations derives an equation"};
    std::vector<const PBinPred*> eqs;
    for (const auto& l : m.labels) {
      auto prem = labelled_equation(g, l);
      if (!prem) return {false, "method inapplicable: no equation labelled (" + l + ")"};
      eqs.push_back(as_eq(prem->prop));
    }
    if (eqs.empty()) return {false, "method inapplicable: no equations to add"};
    TermPtr sl = eqs[0]->left, sr = eqs[0]->right;
    for (std::size_t i = 1; i < eqs.size(); ++i) {
      sl = mk::add(sl, eqs[i]->left);
      sr = mk::add(sr, eqs[i]->right);
    }
    for (const auto& [a, b] : {std::pair{sl, sr}, std::pair{sr, sl}}) {
      auto d = to_ratfunc(mk::sub(mk::sub(claim->left, claim->right), mk::sub(a, b)));
      if (d && d->num.is_zero()) return {};
    }
    return {false, "not derivable by adding the equations: " + quoted(p)};
  }

  Check deri_both(const ProofGoal& g, const FDeriBothTerms& m, const PropPtr& p) const {
    auto claim = as_eq(p);
    if (!claim) return {false, "method inapplicable: differentiating derives an equation"};
    const PBinPred* src = nullptr;
    for (auto it = g.premises.rbegin(); it != g.premises.rend() && !src; ++it) src = as_eq(it->prop);
    if (!src) return {false, "method inapplicable: no equation among the premises"};
    bool functions = function_like(src->left) || function_like(src->right);
    auto derive = [&](const TermPtr& t) -> TermPtr {
      if (auto b = std::get_if<TBinder>(&t->node); b && b->binder == Binder::LambdaB)
        return mk::lambda(b->var, simplify(differentiate(b->body, b->var)));
      if (functions) return mk::unop(TermUnOp::Deriv, t);
      return simplify(differentiate(t, m.var));
    };
    TermPtr d1, d2;
    try {
      d1 = derive(src->left);
      d2 = derive(src->right);
    } catch (const UnsupportedOperator& ex) {
      return {false, std::string("method inapplicable: ") + ex.what()};
    }
    if ((same_value(claim->left, d1) && same_value(claim->right, d2)) ||
        (same_value(claim->left, d2) && same_value(claim->right, d1)))
      return {};
    return {false, "not derivable by differentiating " + quoted(mk::eq(src->left, src->right)) +
                       " with respect to " + m.var};
  }

  Check by_method(const ProofGoal& g, const FwdMethod& m, const PropPtr& p) const {
    if (std::holds_alternative<FNoHint>(m)) return deducible(g, p, cfg_.budget);
    if (is_knowledge(m)) return knowledge(g, method_name(m), p);
    if (auto a = std::get_if<FAddEqn>(&m)) return add_eqn(g, *a, p);
    return deri_both(g, std::get<FDeriBothTerms>(m), p);
  }

  // ---- actions ----

  ProofPtr visit(const ProofNode& n, const ProofAction& a, Thread& t, bool partial) {
    auto i = open(n, rule_name(n));
    Check c = std::visit([&](const auto& x) { return action(n, x, t, partial); }, a.action);
    close(i, t, c.ok, c.message);
    return a.rest;
  }

  Check hole_guard(const Thread& t, const char* rule) const {
    if (t.goal.is_hole())
      return {false, std::string(rule) + " changes the conclusion, which a partial proof does not have"};
    return {};
  }

  Check action(const ProofNode&, const AIntros& a, Thread& t, bool) {
    if (auto c = hole_guard(t, "Intros"); !c.ok) return c;
    auto q = as_quant(t.goal.conclusion, Quantifier::Forall);
    if (!q) return {false, "the conclusion is not universally quantified"};
    bool fresh = !free_vars(t.goal).count(a.var);
    t.goal.conclusion = substitute(q->body, q->var, mk::var(a.var));
    if (!fresh) return {false, "variable " + a.var + " is already free in the goal"};
    return {};
  }

  Check action(const ProofNode&, const AExists& a, Thread& t, bool) {
    if (auto c = hole_guard(t, "Exists"); !c.ok) return c;
    auto q = as_quant(t.goal.conclusion, Quantifier::Exists);
    if (!q) return {false, "the conclusion is not existentially quantified"};
    VarSet fv = free_vars(t.goal);
    for (const auto& v : free_vars(a.witness))
      if (!fv.count(v)) {
        t.goal.conclusion = substitute(q->body, q->var, a.witness);
        return {false, "the witness mentions " + v + ", which is not in scope"};
      }
    t.goal.conclusion = substitute(q->body, q->var, a.witness);
    return {};
  }

  Check action(const ProofNode& n, const ASuppose& a, Thread& t, bool) {
    if (auto c = hole_guard(t, "Suppose"); !c.ok) return c;
    PropPtr hyp, rest;
    if (auto imp = as_binop(t.goal.conclusion, PropBinOp::CImply)) {
      hyp = imp->left;
      rest = imp->right;
    } else if (auto neg = as_not(t.goal.conclusion)) {
      hyp = neg->arg;
      rest = mk::falsity();
    }
    ProofGoal before = t.goal;
    add_premise(t, n.label, a.prop);
    if (!hyp) return {false, "the conclusion is not an implication"};
    t.goal.conclusion = rest;
    if (alpha_equal(a.prop, hyp)) return {};
    if (cfg_.registry && solver_manager(cfg_.budget / 2, *cfg_.registry, before, mk::iff(a.prop, hyp)).accepted)
      return {};
    return {false, "the assumption does not match the hypothesis " + quoted(hyp)};
  }

  Check action(const ProofNode& n, const ASet& a, Thread& t, bool) {
    VarSet fv = free_vars(t.goal);
    Check c;
    for (const auto& v : free_vars(a.value))
      if (!fv.count(v)) c = {false, "the defining term mentions " + v + ", which is not in scope"};
    if (c.ok && fv.count(a.var)) c = {false, "variable " + a.var + " is already free in the goal"};
    if (c.ok) c = well_defined(t.goal, well_definedness_obligations(a.value));
    t.goal.premises.push_back({n.label, mk::eq(mk::var(a.var), a.value)});
    t.set_locals.emplace_back(a.var, a.value);
    return c;
  }

  Check action(const ProofNode& n, const ASetProp& a, Thread& t, bool) {
    Check c = well_defined(t.goal, well_definedness_obligations(a.prop));
    VarSet fv = free_vars(t.goal);
    for (const auto& v : free_vars(a.prop))
      if (!fv.count(v)) t.exist_locals.push_back(v);
    add_premise(t, n.label, a.prop);
    return c;
  }

  Check action(const ProofNode& n, const AExistVar& a, Thread& t, bool) {
    const PQuant* chosen = nullptr;
    for (auto it = t.goal.premises.rbegin(); it != t.goal.premises.rend(); ++it) {
      auto q = as_quant(it->prop, Quantifier::Exists);
      if (!q) continue;
      if (q->var == a.var) {
        chosen = q;
        break;
      }
      if (!chosen) chosen = q;
    }
    if (!chosen) return {false, "no existential premise to instantiate"};
    bool fresh = !free_vars(t.goal).count(a.var);
    add_premise(t, n.label, substitute(chosen->body, chosen->var, mk::var(a.var)));
    t.exist_locals.push_back(a.var);
    if (!fresh) return {false, "variable " + a.var + " is already free in the goal"};
    return {};
  }

  // ---- forward reasoning ----

  ProofPtr visit(const ProofNode& n, const PoseWithoutProof& f, Thread& t, bool) {
    auto i = open(n, rule_name(n));
    Check c = by_method(t.goal, f.method, f.prop);
    add_premise(t, n.label, f.prop);
    close(i, t, c.ok, c.message);
    return f.rest;
  }

  ProofPtr visit(const ProofNode& n, const PoseAndProve& f, Thread& t, bool) {
    auto i = open(n, rule_name(n));
    ProofGoal sub_goal{t.goal.premises, f.prop};
    out_[i].nested_goal = sub_goal;
    Check c;
    if (is_knowledge(f.method)) {
      auto name = method_name(f.method);
      const TheoremEntry* e = cfg_.library ? cfg_.library->find_any(name) : nullptr;
      if (!e) c = {false, "method inapplicable: unknown theorem or definition " + name};
      else if (!e->enabled) c = {false, "method inapplicable: " + std::string(e->kind == KnowledgeKind::Theorem ? "theorem" : "definition") + " disabled: " + name};
      else if (!match_pattern(e->conclusion, f.prop, e->metavar_set()))
        c = {false, "method inapplicable: the proposition does not match the conclusion of " + name};
    }
    Thread sub = run(sub_goal, f.subproof, false);
    if (c.ok && !(sub.ok && sub.qed))
      c = {false, sub.ok ? "the nested proof does not reach its conclusion" : "the nested proof has rejected steps"};
    add_premise(t, n.label, f.prop);
    close(i, t, c.ok, c.message);
    return f.rest;
  }

  // ---- backward reasoning ----

  ProofPtr visit(const ProofNode& n, const ClaimSuffice& b, Thread& t, bool) {
    auto i = open(n, rule_name(n));
    Check c = hole_guard(t, "Suffice");
    if (c.ok) c = suffice(n, b.method, b.prop, t);
    close(i, t, c.ok, c.message);
    return b.rest;
  }

  Check suffice(const ProofNode& n, BwdMethod m, const PropPtr& p, Thread& t) {
    PropPtr goal = t.goal.conclusion;
    if (m == BwdMethod::BContra) {
      add_premise(t, n.label, p);
      t.goal.conclusion = mk::falsity();
      if (alpha_equal(p, mk::negate(goal))) return {};
      if (cfg_.registry &&
          solver_manager(cfg_.budget / 2, *cfg_.registry, t.goal, mk::iff(p, mk::negate(goal))).accepted)
        return {};
      return {false, "the contradiction hypothesis is not the negation of " + quoted(goal)};
    }
    ProofGoal with = t.goal;
    with.premises.push_back({n.label, p});
    t.goal.conclusion = p;
    if (deducible(with, goal, cfg_.budget).ok) return {};
    return {false, quoted(p) + " does not imply the conclusion " + quoted(goal)};
  }

  ProofPtr visit(const ProofNode& n, const ProveSuffice& b, Thread& t, bool) {
    auto i = open(n, rule_name(n));
    Check c = hole_guard(t, "Suffice");
    if (!c.ok) {
      close(i, t, false, c.message);
      return b.rest;
    }
    PropPtr goal = t.goal.conclusion;
    if (b.method == BwdMethod::BContra) {
      ProofGoal sub_goal{t.goal.premises, mk::falsity()};
      sub_goal.premises.push_back({n.label, b.prop});
      out_[i].nested_goal = sub_goal;
      if (!alpha_equal(b.prop, mk::negate(goal)))
        c = {false, "the contradiction hypothesis is not the negation of " + quoted(goal)};
      Thread sub = run(sub_goal, b.subproof, false);
      if (c.ok && !(sub.ok && sub.qed)) c = {false, "the contradiction is not derived"};
      t.qed = c.ok;
      close(i, t, c.ok, c.message);
      return b.rest;
    }
    ProofGoal sub_goal{t.goal.premises, goal};
    sub_goal.premises.push_back({n.label, b.prop});
    out_[i].nested_goal = sub_goal;
    Thread sub = run(sub_goal, b.subproof, false);
    if (!(sub.ok && sub.qed)) c = {false, "the nested proof that " + quoted(b.prop) + " suffices fails"};
    t.goal.conclusion = b.prop;
    close(i, t, c.ok, c.message);
    return b.rest;
  }

  // ---- conclusions ----

  Check conclude(const FwdMethod& m, Thread& t) {
    if (auto c = hole_guard(t, "Concl"); !c.ok) return c;
    Check c = by_method(t.goal, m, t.goal.conclusion);
    if (c.ok) t.qed = true;
    return c;
  }

  ProofPtr visit(const ProofNode& n, const ConclWithoutProof& f, Thread& t, bool) {
    auto i = open(n, rule_name(n));
    Check c = conclude(f.method, t);
    close(i, t, c.ok, c.message);
    return nullptr;
  }

  ProofPtr visit(const ProofNode& n, const ConclAndProve& f, Thread& t, bool) {
    auto i = open(n, rule_name(n));
    Check c = hole_guard(t, "Concl");
    if (c.ok) {
      out_[i].nested_goal = t.goal;
      Thread sub = run(t.goal, f.subproof, false);
      if (sub.ok && sub.qed) t.qed = true;
      else c = {false, "the nested proof does not establish the conclusion"};
    }
    close(i, t, c.ok, c.message);
    return nullptr;
  }

  // ---- partial proofs ----

  ProofPtr visit(const ProofNode& n, const PosePartialProof& pp, Thread& t, bool) {
    auto i = open(n, rule_name(n));
    VarSet fv = free_vars(t.goal);
    Check c;
    std::vector<PropPtr> assumptions;
    std::string var;
    if (auto pv = std::get_if<APoseVar>(&pp.pose)) {
      var = pv->var;
      assumptions = pv->assumptions;
      if (fv.count(var)) c = {false, "variable " + var + " is already free in the goal"};
      for (const auto& a : assumptions)
        for (const auto& v : free_vars(a))
          if (c.ok && v != var && !fv.count(v)) c = {false, "the assumption mentions " + v + ", which is not in scope"};
    } else {
      assumptions = {std::get<APoseProp>(pp.pose).prop};
      for (const auto& v : free_vars(assumptions[0]))
        if (c.ok && !fv.count(v)) c = {false, "the assumption mentions " + v + ", which is not in scope"};
    }
    ProofGoal sub_goal{t.goal.premises, nullptr};
    for (const auto& a : assumptions)
      for (const auto& x : conjuncts(a)) sub_goal.premises.push_back({n.label, x});
    out_[i].nested_goal = sub_goal;
    std::size_t base = sub_goal.premises.size();
    Thread sub = run(sub_goal, pp.partial, true);
    if (c.ok && !sub.ok) c = {false, "the partial proof has rejected steps"};
    if (c.ok && !sub.ended) c = {false, "the partial proof does not end with 'This ends the partial proof'"};

    for (std::size_t k = base; k < sub.goal.premises.size(); ++k) {
      PropPtr d = sub.goal.premises[k].prop;
      for (auto it = sub.set_locals.rbegin(); it != sub.set_locals.rend(); ++it)
        d = substitute(d, it->first, it->second);
      for (auto it = sub.exist_locals.rbegin(); it != sub.exist_locals.rend(); ++it)
        if (occurs_free(*it, d)) d = mk::exists(*it, d);
      PropPtr hyp = mk::conj_all(assumptions);
      if (var.empty()) d = mk::implies(hyp, d);
      else d = mk::forall(var, assumptions.empty() ? d : mk::implies(hyp, d));
      if (find_known(t.goal, d) < 0) t.goal.premises.push_back({sub.goal.premises[k].label, d});
    }
    close(i, t, c.ok, c.message);
    return pp.rest;
  }

  ProofPtr visit(const ProofNode& n, const EndPartialProof&, Thread& t, bool partial) {
    auto i = open(n, rule_name(n));
    if (!partial) {
      close(i, t, false, "there is no partial proof to end");
      return nullptr;
    }
    t.ended = true;
    close(i, t, true, "");
    return nullptr;
  }
};

}  // namespace

StepOutcome step(const ProofGoal& goal, const ProofPtr& head, const CheckerConfig& cfg) {
  std::vector<StepVerdict> verdicts;
  Run run(cfg, verdicts);
  Thread t;
  t.goal = goal;
  run.apply(head, t, goal.is_hole());
  StepOutcome s;
  if (verdicts.empty()) return s;
  const auto& v = verdicts.front();
  s.accepted = v.accepted;
  s.rule = v.rule;
  s.message = v.message;
  if (!t.qed) s.next = t.goal;
  return s;
}

CheckReport check_proof(const ProofGoal& goal, const ProofPtr& proof, const CheckerConfig& cfg) {
  CheckReport r;
  Run run(cfg, r.verdicts);
  Thread t = run.run(goal, proof, goal.is_hole());
  r.completed = t.qed && t.ok &&
                std::all_of(r.verdicts.begin(), r.verdicts.end(), [](const StepVerdict& v) { return v.accepted; });
  return r;
}

CheckReport check(const AnalysisOutcome& outcome, const CheckerConfig& cfg) {
  return check_proof(outcome.initial_goal, outcome.proof, cfg);
}

// ---- reports ----------------------------------------------------------------------

namespace {

nlohmann::ordered_json pos_json(const SourcePos& p) {
  return nlohmann::ordered_json{{"line", p.line}, {"column", p.column}};
}

}  // namespace

std::string report_json(const CheckReport& r, const std::string& file) {
  nlohmann::ordered_json j;
  j["file"] = file;
  auto steps = nlohmann::ordered_json::array();
  for (const auto& v : r.verdicts) {
    nlohmann::ordered_json s;
    s["label"] = v.label;
    s["span"] = {{"start", pos_json(v.span.start)}, {"end", pos_json(v.span.end)}};
    s["rule"] = v.rule;
    s["accepted"] = v.accepted;
    s["message"] = v.message;
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  j["completed"] = r.completed;
  return j.dump(2) + "\n";
}

std::string report_text(const CheckReport& r, const std::string& file) {
  std::ostringstream os;
  for (const auto& v : r.verdicts) {
    os << file << ":" << v.span.start.line << ":" << v.span.start.column << ": (" << v.label << ") "
       << v.rule << " " << (v.accepted ? "accepted" : "rejected");
    if (!v.message.empty()) os << ": " << v.message;
    os << "\n";
  }
  os << file << ": " << (r.completed ? "proof complete" : "proof incomplete") << "\n";
  return os.str();
}

}  // namespace naproof
