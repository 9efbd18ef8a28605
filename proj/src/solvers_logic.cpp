#include "naproof/knowledge.hpp"
#include "solver_impl.hpp"

#include <algorithm>

namespace naproof::detail {

std::vector<PropPtr> premise_props(const ProofGoal& g) {
  std::vector<PropPtr> out;
  out.reserve(g.premises.size());
  for (const auto& p : g.premises) out.push_back(p.prop);
  return out;
}

Sequent strip(const ProofGoal& g, const PropPtr& p) {
  Sequent s;
  VarSet avoid = free_vars(g);
  PropPtr cur = p;
  for (;;) {
    if (auto q = as_quant(cur, Quantifier::Forall)) {
      VarSet around = free_vars(cur);
      around.insert(avoid.begin(), avoid.end());
      for (const auto& h : s.hyps) {
        auto fv = free_vars(h);
        around.insert(fv.begin(), fv.end());
      }
      std::string v = avoid.count(q->var) ? fresh_name(q->var, around) : q->var;
      avoid.insert(v);
      cur = v == q->var ? q->body : substitute(q->body, q->var, mk::var(v));
    } else if (auto imp = as_binop(cur, PropBinOp::CImply)) {
      for (const auto& c : conjuncts(imp->left)) s.hyps.push_back(c);
      cur = imp->right;
    } else if (auto cb = std::get_if<PCBinPred>(&cur->node)) {
      for (const auto& c : cb->context)
        for (const auto& x : conjuncts(c)) s.hyps.push_back(x);
      cur = mk::binpred(cb->pred, cb->left, cb->right);
      break;
    } else {
      break;
    }
  }
  s.target = cur;
  return s;
}

std::optional<Comparison> as_comparison(const PropPtr& p) {
  if (!p) return std::nullopt;
  if (auto b = std::get_if<PBinPred>(&p->node); b && is_order(b->pred))
    return Comparison{b->pred, b->left, b->right};
  if (auto b = std::get_if<PCBinPred>(&p->node); b && is_order(b->pred))
    return Comparison{b->pred, b->left, b->right};
  return std::nullopt;
}

BinPred flip(BinPred r) {
  switch (r) {
    case BinPred::RLt: return BinPred::RGt;
    case BinPred::RGt: return BinPred::RLt;
    case BinPred::RLe: return BinPred::RGe;
    case BinPred::RGe: return BinPred::RLe;
    default: return r;
  }
}

BinPred negated(BinPred r) {
  switch (r) {
    case BinPred::RLt: return BinPred::RGe;
    case BinPred::RGt: return BinPred::RLe;
    case BinPred::RLe: return BinPred::RGt;
    case BinPred::RGe: return BinPred::RLt;
    case BinPred::REq: return BinPred::RNe;
    case BinPred::RNe: return BinPred::REq;
    default: return r;
  }
}

bool has_op(const PropPtr& p, TermUnOp op) {
  return any_subterm(p, [&](const TermPtr& t) {
    auto u = std::get_if<TUnOpNode>(&t->node);
    return u && u->op == op;
  });
}

bool has_binop(const PropPtr& p, TermBinOp op) {
  return any_subterm(p, [&](const TermPtr& t) {
    auto b = std::get_if<TBinOpNode>(&t->node);
    return b && b->op == op;
  });
}

PropPtr under(const std::vector<PropPtr>& hyps, const PropPtr& p) {
  if (hyps.empty()) return p;
  if (auto c = as_comparison(p); c && std::holds_alternative<PBinPred>(p->node))
    return mk::cbinpred(c->rel, c->left, c->right, hyps);
  return mk::implies(mk::conj_all(hyps), p);
}

namespace {

bool known(const ProofGoal& g, const PropPtr& p) { return find_known(g, p) >= 0; }

bool in_list(const std::vector<PropPtr>& ps, const PropPtr& p) {
  for (const auto& q : ps)
    if (alpha_equal(q, p)) return true;
  return false;
}

bool reflexive(const PropPtr& p) {
  auto c = as_comparison(p);
  if (!c) return false;
  if (c->rel != BinPred::REq && c->rel != BinPred::RLe && c->rel != BinPred::RGe) return false;
  return alpha_equal(c->left, c->right);
}

bool contradictory(const std::vector<PropPtr>& facts) {
  for (const auto& f : facts) {
    if (is_false(f)) return true;
    if (auto n = as_not(f))
      if (in_list(facts, n->arg)) return true;
  }
  return false;
}

std::vector<PropPtr> all_conjuncts(const std::vector<PropPtr>& ps) {
  std::vector<PropPtr> out;
  for (const auto& p : ps)
    for (const auto& c : conjuncts(p)) out.push_back(c);
  return out;
}

SolveResult syntactic(const ProofGoal& g, const PropPtr& p) {
  if (is_true(p) || known(g, p) || reflexive(p)) return SolveResult::accepted();
  auto facts = all_conjuncts(premise_props(g));
  if (contradictory(facts)) return SolveResult::accepted();
  if (auto b = std::get_if<PBinPred>(&p->node); b && (b->pred == BinPred::REq || b->pred == BinPred::RNe))
    if (known(g, mk::binpred(b->pred, b->right, b->left))) return SolveResult::accepted();
  if (auto c = as_comparison(p)) {
    auto flipped = mk::binpred(flip(c->rel), c->right, c->left);
    if (known(g, flipped)) return SolveResult::accepted();
  }
  auto s = strip(g, p);
  if (s.target != p) {
    auto local = s.hyps;
    if (is_true(s.target) || reflexive(s.target) || contradictory(local) || in_list(local, s.target) ||
        known(g, s.target))
      return SolveResult::accepted();
    for (const auto& f : facts) local.push_back(f);
    if (contradictory(local)) return SolveResult::accepted();
  }
  return SolveResult::pass(p);
}

// Premise of the form `for every x1 .. xk, H implies C` (k and H optional).
struct Rule {
  std::vector<std::string> vars;
  PropPtr hyp;
  PropPtr concl;
};

Rule as_rule(const PropPtr& q) {
  Rule r;
  PropPtr body = q;
  while (auto f = as_quant(body, Quantifier::Forall)) {
    r.vars.push_back(f->var);
    body = f->body;
  }
  if (auto imp = as_binop(body, PropBinOp::CImply)) {
    r.hyp = imp->left;
    r.concl = imp->right;
  } else {
    r.concl = body;
  }
  return r;
}

// Backward use of a rule among the premises; extra facts discharge hypotheses directly.
std::optional<SolveResult> modus_ponens(const ProofGoal& g, const PropPtr& target,
                                        const std::vector<PropPtr>& local) {
  for (int i = static_cast<int>(g.premises.size()) - 1; i >= 0; --i) {
    for (const auto& prem : conjuncts(g.premises[static_cast<std::size_t>(i)].prop)) {
      Rule r = as_rule(prem);
      if (r.vars.empty() && !r.hyp) continue;
      VarSet meta(r.vars.begin(), r.vars.end());
      std::vector<PropPtr> pieces = conjuncts(r.concl);
      if (pieces.size() > 1) pieces.insert(pieces.begin(), r.concl);
      for (const auto& piece : pieces) {
        auto s = match_pattern(piece, target, meta);
        if (!s) continue;
        if (!r.hyp) return SolveResult::accepted();
        bool complete = true;
        for (const auto& v : free_vars(r.hyp))
          if (meta.count(v) && !s->terms.count(v)) complete = false;
        if (!complete) continue;
        std::vector<PropPtr> need;
        for (const auto& h : conjuncts(instantiate(r.hyp, *s)))
          if (!in_list(local, h) && !known(g, h)) need.push_back(under(local, h));
        return SolveResult::decomposed(need);
      }
    }
  }
  return std::nullopt;
}

std::optional<SolveResult> exists_intro(const ProofGoal& g, const PQuant& q) {
  VarSet meta{q.var};
  auto facts = all_conjuncts(premise_props(g));
  for (const auto& c : conjuncts(q.body)) {
    if (!occurs_free(q.var, c)) continue;
    for (auto it = facts.rbegin(); it != facts.rend(); ++it) {
      auto s = match_pattern(c, *it, meta);
      if (!s || !s->terms.count(q.var)) continue;
      return SolveResult::decomposed({substitute(q.body, q.var, s->terms.at(q.var))});
    }
  }
  // Arithmetic witnesses: the bounds mentioned in the body, nudged by one.
  auto parts = conjuncts(q.body);
  if (!std::all_of(parts.begin(), parts.end(), [](const PropPtr& c) { return as_comparison(c).has_value(); }))
    return std::nullopt;
  std::vector<TermPtr> candidates{mk::num(0), mk::num(1)};
  for (const auto& c : parts) {
    auto cmp = as_comparison(c);
    for (const auto& side : {cmp->left, cmp->right}) {
      if (occurs_free(q.var, side)) continue;
      candidates.push_back(side);
      candidates.push_back(mk::add(side, mk::num(1)));
      candidates.push_back(mk::sub(side, mk::num(1)));
    }
  }
  for (const auto& w : candidates) {
    auto inst = substitute(q.body, q.var, w);
    auto facts = saturate_facts(premise_props(g), {}, inst);
    auto cs = conjuncts(inst);
    if (std::all_of(cs.begin(), cs.end(), [&](const PropPtr& c) { return linear_entails(facts, c); }))
      return SolveResult::decomposed({inst});
  }
  return std::nullopt;
}

std::optional<PropPtr> push_not(const PropPtr& inner) {
  if (auto c = as_comparison(inner); c && std::holds_alternative<PBinPred>(inner->node)) {
    if (c->rel == BinPred::RNe || c->rel == BinPred::REq || c->rel == BinPred::RLt || c->rel == BinPred::RGt ||
        c->rel == BinPred::RLe || c->rel == BinPred::RGe)
      return mk::binpred(negated(c->rel), c->left, c->right);
  }
  if (auto n = as_not(inner)) return n->arg;
  if (auto o = as_binop(inner, PropBinOp::COr)) return mk::conj(mk::negate(o->left), mk::negate(o->right));
  if (auto i = as_binop(inner, PropBinOp::CImply)) return mk::conj(i->left, mk::negate(i->right));
  if (auto f = as_quant(inner, Quantifier::Forall)) return mk::exists(f->var, mk::negate(f->body));
  if (auto e = as_quant(inner, Quantifier::Exists)) return mk::forall(e->var, mk::negate(e->body));
  if (is_true(inner)) return mk::falsity();
  if (is_false(inner)) return mk::truth();
  return std::nullopt;
}

SolveResult logic(const ProofGoal& g, const PropPtr& p) {
  if (is_true(p)) return SolveResult::accepted();
  if (auto c = as_binop(p, PropBinOp::CAnd)) return SolveResult::decomposed({c->left, c->right});
  if (auto c = as_binop(p, PropBinOp::CIff))
    return SolveResult::decomposed({mk::implies(c->left, c->right), mk::implies(c->right, c->left)});
  if (auto c = as_binop(p, PropBinOp::COr)) {
    if (known(g, c->left) || known(g, c->right)) return SolveResult::accepted();
    if (known(g, mk::negate(c->left))) return SolveResult::decomposed({c->right});
    if (known(g, mk::negate(c->right))) return SolveResult::decomposed({c->left});
  }
  if (auto n = as_not(p)) {
    if (auto pushed = push_not(n->arg)) return SolveResult::decomposed({*pushed});
  }
  if (auto f = as_quant(p, Quantifier::Forall)) {
    VarSet avoid = free_vars(g);
    std::string v = f->var;
    if (avoid.count(v)) {
      auto fv = free_vars(p);
      avoid.insert(fv.begin(), fv.end());
      v = fresh_name(f->var, avoid);
    }
    return SolveResult::decomposed({v == f->var ? f->body : substitute(f->body, f->var, mk::var(v))});
  }
  if (auto imp = as_binop(p, PropBinOp::CImply)) {
    auto hyps = conjuncts(imp->left);
    const auto& b = imp->right;
    if (is_true(b) || in_list(hyps, b) || known(g, b) || contradictory(hyps)) return SolveResult::accepted();
    bool all_known = std::all_of(hyps.begin(), hyps.end(), [&](const PropPtr& h) { return known(g, h); });
    if (all_known) return SolveResult::decomposed({b});
    auto pieces = conjuncts(b);
    if (pieces.size() > 1) {
      std::vector<PropPtr> out;
      for (const auto& x : pieces) out.push_back(mk::implies(imp->left, x));
      return SolveResult::decomposed(out);
    }
    if (auto f = as_quant(b, Quantifier::Forall)) {
      VarSet avoid = free_vars(g);
      auto fv = free_vars(p);
      avoid.insert(fv.begin(), fv.end());
      std::string v = avoid.count(f->var) ? fresh_name(f->var, avoid) : f->var;
      return SolveResult::decomposed({mk::implies(imp->left, substitute(f->body, f->var, mk::var(v)))});
    }
    if (auto inner = as_binop(b, PropBinOp::CImply))
      return SolveResult::decomposed({mk::implies(mk::conj(imp->left, inner->left), inner->right)});
    if (auto c = as_comparison(b); c && std::holds_alternative<PBinPred>(b->node))
      return SolveResult::decomposed({mk::cbinpred(c->rel, c->left, c->right, hyps)});
    if (auto r = modus_ponens(g, b, hyps)) return *r;
    return SolveResult::pass(p);
  }
  if (auto e = as_quant(p, Quantifier::Exists)) {
    if (auto r = modus_ponens(g, p, {})) return *r;
    if (auto r = exists_intro(g, *e)) return *r;
    return SolveResult::pass(p);
  }
  if (auto cb = std::get_if<PCBinPred>(&p->node)) {
    if (auto r = modus_ponens(g, mk::binpred(cb->pred, cb->left, cb->right), cb->context)) return *r;
    return SolveResult::pass(p);
  }
  if (auto r = modus_ponens(g, p, {})) return *r;
  return SolveResult::pass(p);
}

SolveResult chain(const ProofGoal&, const PropPtr& p) {
  if (std::holds_alternative<PLongOrder>(p->node)) return SolveResult::decomposed(conjuncts(p));
  auto s = conjuncts(p);
  if (s.size() > 1 && std::all_of(s.begin(), s.end(), [](const PropPtr& q) {
        auto b = as_eq(q);
        return b != nullptr;
      }))
    return SolveResult::decomposed(s);
  return SolveResult::pass(p);
}

}  // namespace

SolverSpec syntactic_solver() { return {"syntactic", syntactic, 1, 100, {}}; }
SolverSpec logic_solver() { return {"logic", logic, 1, 90, {}}; }
SolverSpec chain_solver() { return {"chain", chain, 1, 80, {}}; }

}  // namespace naproof::detail
