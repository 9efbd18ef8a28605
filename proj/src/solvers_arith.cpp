#include "naproof/algebra.hpp"
#include "solver_impl.hpp"

#include <set>

namespace naproof {

// ---- definitions ----------------------------------------------------------------

Definitions collect_definitions(const std::vector<PropPtr>& facts) {
  Definitions d;
  auto has_var = [&](const std::string& v) {
    for (const auto& [n, t] : d.vars)
      if (n == v) return true;
    for (const auto& [n, t] : d.functions)
      if (n == v) return true;
    return false;
  };
  for (const auto& f : facts) {
    for (const auto& c : conjuncts(f)) {
      if (auto e = as_eq(c)) {
        auto v = as_var(e->left);
        if (!v || occurs_free(v->name, e->right) || has_var(v->name)) continue;
        if (auto b = std::get_if<TBinder>(&e->right->node); b && b->binder == Binder::LambdaB)
          d.functions.emplace_back(v->name, e->right);
        else
          d.vars.emplace_back(v->name, e->right);
        continue;
      }
      auto q = as_quant(c, Quantifier::Forall);
      if (!q) continue;
      auto e = as_eq(q->body);
      if (!e) continue;
      auto app = std::get_if<TApply>(&e->left->node);
      if (!app) continue;
      auto f_ = as_var(app->fn);
      auto x = as_var(app->arg);
      if (!f_ || !x || x->name != q->var || f_->name == q->var || occurs_free(f_->name, e->right) ||
          has_var(f_->name))
        continue;
      d.functions.emplace_back(f_->name, mk::lambda(q->var, e->right));
    }
  }
  return d;
}

TermPtr Definitions::rewrite(const TermPtr& t) const {
  TermPtr cur = t;
  for (int pass = 0; pass < 8; ++pass) {
    TermPtr before = cur;
    for (const auto& [v, val] : vars) cur = substitute(cur, v, val);
    cur = map_subterms(cur, [&](const TermPtr& u) -> TermPtr {
      auto app = std::get_if<TApply>(&u->node);
      if (!app) return u;
      auto f = as_var(app->fn);
      if (!f) return u;
      for (const auto& [name, lam] : functions)
        if (name == f->name) return beta_reduce(mk::apply(lam, app->arg));
      return u;
    });
    if (equal(cur, before)) break;
  }
  return cur;
}

PropPtr Definitions::rewrite(const PropPtr& p) const {
  if (empty()) return p;
  auto c = detail::as_comparison(p);
  if (c && std::holds_alternative<PBinPred>(p->node))
    return mk::binpred(c->rel, rewrite(c->left), rewrite(c->right));
  return p;
}

// ---- linear arithmetic ------------------------------------------------------------

namespace {

using Lin = std::map<std::string, Rational>;  // "" holds the constant
enum class Op { Gt, Ge, Eq };
struct Constraint {
  Lin e;
  Op op;
};

std::string monomial_key(const Monomial& m) {
  std::string s;
  for (const auto& [k, e] : m) s += k + "^" + std::to_string(e) + "*";
  return s;
}

struct Linearizer {
  std::map<std::string, Monomial> monomials;
  std::map<std::string, TermPtr> atoms;

  std::optional<Lin> difference(const TermPtr& l, const TermPtr& r) {
    auto d = to_poly(mk::sub(l, r));
    if (!d) return std::nullopt;
    Lin out;
    for (const auto& [m, c] : d->terms) {
      if (m.empty()) {
        out[""] = c;
        continue;
      }
      auto k = monomial_key(m);
      monomials[k] = m;
      out[k] = c;
    }
    atoms.insert(d->atoms.begin(), d->atoms.end());
    return out;
  }

  // Sign knowledge about the monomials met so far.
  std::vector<Constraint> sign_facts() const {
    std::vector<Constraint> out;
    auto bound = [&](const std::string& k, Rational lo, Op op) {
      out.push_back({Lin{{k, 1}, {"", -lo}}, op});
    };
    auto upper = [&](const std::string& k, Rational hi, Op op) {
      out.push_back({Lin{{k, -1}, {"", hi}}, op});
    };
    for (const auto& [k, m] : monomials) {
      bool even = std::all_of(m.begin(), m.end(), [](const auto& x) { return x.second % 2 == 0; });
      if (even) bound(k, 0, Op::Ge);
      if (m.size() != 1 || m.begin()->second != 1) continue;
      const auto& a = m.begin()->first;
      auto starts = [&](const char* pre) { return a.rfind(pre, 0) == 0; };
      if (starts("(Exp ")) bound(k, 0, Op::Gt);
      if (starts("(Sqrt ") || starts("(Abs ")) bound(k, 0, Op::Ge);
      if (starts("(Sin ") || starts("(Cos ")) {
        bound(k, -1, Op::Ge);
        upper(k, 1, Op::Ge);
      }
      if (a == "(TConst \"e\")") {
        bound(k, Rational(271, 100), Op::Gt);
        upper(k, Rational(272, 100), Op::Gt);
      }
      if (a == "(TConst \"pi\")") {
        bound(k, Rational(314, 100), Op::Gt);
        upper(k, Rational(315, 100), Op::Gt);
      }
    }
    return out;
  }
};

void clean(Lin& e) {
  for (auto it = e.begin(); it != e.end();) {
    if (it->second == 0) it = e.erase(it);
    else ++it;
  }
}

bool has_vars(const Lin& e) {
  return std::any_of(e.begin(), e.end(), [](const auto& x) { return !x.first.empty(); });
}

Rational constant_of(const Lin& e) {
  auto it = e.find("");
  return it == e.end() ? Rational(0) : it->second;
}

Lin scaled(const Lin& e, const Rational& f) {
  Lin out;
  for (const auto& [k, c] : e) out[k] = c * f;
  return out;
}

void add_to(Lin& acc, const Lin& e) {
  for (const auto& [k, c] : e) acc[k] += c;
  clean(acc);
}

std::string signature(const Constraint& c) {
  Rational norm = 0;
  for (const auto& [k, v] : c.e)
    if (!k.empty()) {
      norm = v < 0 ? Rational(-v) : v;
      break;
    }
  if (norm == 0) norm = 1;
  std::string s = std::to_string(static_cast<int>(c.op));
  for (const auto& [k, v] : c.e) s += "|" + k + ":" + Rational(v / norm).str();
  return s;
}

constexpr std::size_t kMaxConstraints = 3000;

bool infeasible(std::vector<Constraint> cs) {
  for (int round = 0; round < 200; ++round) {
    std::vector<Constraint> next;
    std::set<std::string> seen;
    for (auto& c : cs) {
      clean(c.e);
      if (!has_vars(c.e)) {
        Rational k = constant_of(c.e);
        bool holds = c.op == Op::Gt ? k > 0 : c.op == Op::Ge ? k >= 0 : k == 0;
        if (!holds) return true;
        continue;
      }
      if (seen.insert(signature(c)).second) next.push_back(std::move(c));
    }
    cs = std::move(next);
    if (cs.empty()) return false;

    auto eq = std::find_if(cs.begin(), cs.end(), [](const Constraint& c) { return c.op == Op::Eq; });
    if (eq != cs.end()) {
      Constraint pivot = *eq;
      cs.erase(eq);
      std::string x;
      Rational a;
      for (const auto& [k, v] : pivot.e)
        if (!k.empty()) {
          x = k;
          a = v;
          break;
        }
      for (auto& c : cs) {
        auto it = c.e.find(x);
        if (it == c.e.end()) continue;
        Rational f = -it->second / a;
        add_to(c.e, scaled(pivot.e, f));
      }
      continue;
    }

    std::map<std::string, std::pair<int, int>> counts;
    for (const auto& c : cs)
      for (const auto& [k, v] : c.e)
        if (!k.empty()) (v > 0 ? counts[k].first : counts[k].second)++;
    std::string x;
    long best = -1;
    for (const auto& [k, pn] : counts) {
      long cost = static_cast<long>(pn.first) * pn.second - pn.first - pn.second;
      if (best < 0 || cost < best) {
        best = cost < 0 ? 0 : cost;
        x = k;
        if (cost <= 0) break;
      }
    }
    std::vector<Constraint> pos, neg, rest;
    for (auto& c : cs) {
      auto it = c.e.find(x);
      if (it == c.e.end()) rest.push_back(std::move(c));
      else if (it->second > 0) pos.push_back(std::move(c));
      else neg.push_back(std::move(c));
    }
    for (const auto& p : pos) {
      for (const auto& n : neg) {
        Rational a = p.e.at(x), b = -n.e.at(x);
        Lin e = scaled(p.e, b);
        add_to(e, scaled(n.e, a));
        rest.push_back({e, (p.op == Op::Gt || n.op == Op::Gt) ? Op::Gt : Op::Ge});
      }
    }
    if (rest.size() > kMaxConstraints) return false;
    cs = std::move(rest);
  }
  return false;
}

std::optional<Constraint> to_constraint(Linearizer& lz, BinPred rel, const TermPtr& l, const TermPtr& r) {
  auto d = lz.difference(l, r);
  if (!d) return std::nullopt;
  switch (rel) {
    case BinPred::REq: return Constraint{*d, Op::Eq};
    case BinPred::RGt: return Constraint{*d, Op::Gt};
    case BinPred::RGe: return Constraint{*d, Op::Ge};
    case BinPred::RLt: return Constraint{scaled(*d, -1), Op::Gt};
    case BinPred::RLe: return Constraint{scaled(*d, -1), Op::Ge};
    default: return std::nullopt;
  }
}

}  // namespace

bool linear_entails(const std::vector<PropPtr>& facts, const PropPtr& target) {
  Linearizer lz;
  std::vector<Constraint> base;
  for (const auto& f : facts) {
    auto c = detail::as_comparison(f);
    if (!c) continue;
    if (auto k = to_constraint(lz, c->rel, c->left, c->right)) base.push_back(*k);
  }
  std::vector<std::vector<Constraint>> cases;
  if (is_false(target)) {
    cases.push_back({});
  } else {
    auto c = detail::as_comparison(target);
    if (!c) return false;
    auto d = lz.difference(c->left, c->right);
    if (!d) return false;
    switch (c->rel) {
      case BinPred::RLt: cases.push_back({{*d, Op::Ge}}); break;
      case BinPred::RLe: cases.push_back({{*d, Op::Gt}}); break;
      case BinPred::RGt: cases.push_back({{scaled(*d, -1), Op::Ge}}); break;
      case BinPred::RGe: cases.push_back({{scaled(*d, -1), Op::Gt}}); break;
      case BinPred::REq:
        cases.push_back({{*d, Op::Gt}});
        cases.push_back({{scaled(*d, -1), Op::Gt}});
        break;
      case BinPred::RNe: cases.push_back({{*d, Op::Eq}}); break;
      default: return false;
    }
  }
  // Explicit even powers are nonnegative even when their expansion hides it.
  std::set<std::string> powers;
  auto even_powers = [&](const TermPtr& t) {
    if (auto b = std::get_if<TBinOpNode>(&t->node); b && b->op == TermBinOp::Pow) {
      auto k = std::get_if<TNum>(&b->right->node);
      if (k && denominator(k->value) == 1 && k->value > 0 && numerator(k->value) % 2 == 0 &&
          powers.insert(atom_key(t)).second)
        if (auto c = to_constraint(lz, BinPred::RGe, t, mk::num(0))) base.push_back(*c);
    }
    return false;
  };
  for (const auto& f : facts)
    if (detail::as_comparison(f)) any_subterm(f, even_powers);
  if (!is_false(target)) any_subterm(target, even_powers);
  auto signs = lz.sign_facts();
  for (auto& extra : cases) {
    auto cs = base;
    cs.insert(cs.end(), signs.begin(), signs.end());
    cs.insert(cs.end(), extra.begin(), extra.end());
    if (!infeasible(std::move(cs))) return false;
  }
  return true;
}

// ---- saturation -------------------------------------------------------------------

namespace {

bool contains_alpha(const std::vector<PropPtr>& ps, const PropPtr& p) {
  return std::any_of(ps.begin(), ps.end(), [&](const PropPtr& q) { return alpha_equal(q, p); });
}

struct FactSet {
  std::vector<PropPtr> facts;
  std::vector<PropPtr> seen;  // every conjunct, comparisons or not

  void add(const PropPtr& p) {
    for (const auto& c : conjuncts(p)) {
      if (contains_alpha(seen, c)) continue;
      seen.push_back(c);
      if (auto cmp = detail::as_comparison(c)) {
        if (auto cb = std::get_if<PCBinPred>(&c->node)) {
          bool ok = std::all_of(cb->context.begin(), cb->context.end(),
                                [&](const PropPtr& h) { return holds(h); });
          if (ok) facts.push_back(mk::binpred(cmp->rel, cmp->left, cmp->right));
        } else {
          facts.push_back(c);
        }
      } else if (auto n = as_not(c)) {
        if (auto inner = detail::as_comparison(n->arg))
          facts.push_back(mk::binpred(detail::negated(inner->rel), inner->left, inner->right));
      }
    }
  }

  bool holds(const PropPtr& h) {
    for (const auto& c : conjuncts(h)) {
      if (contains_alpha(seen, c)) continue;
      if (detail::as_comparison(c) && linear_entails(facts, c)) continue;
      return false;
    }
    return true;
  }
};

void collect_candidates(const PropPtr& p, std::vector<TermPtr>& out) {
  any_subterm(p, [&](const TermPtr& u) {
    if (std::holds_alternative<TVar>(u->node) || std::holds_alternative<TNum>(u->node))
      out.push_back(u);
    else if (auto a = std::get_if<TApply>(&u->node))
      out.push_back(a->arg);
    return false;
  });
}

}  // namespace

std::vector<PropPtr> saturate_facts(const std::vector<PropPtr>& premises,
                                    const std::vector<PropPtr>& hypotheses, const PropPtr& target) {
  FactSet fs;
  for (const auto& p : premises) fs.add(p);
  for (const auto& h : hypotheses) fs.add(h);

  std::vector<TermPtr> raw;
  if (target) collect_candidates(target, raw);
  for (const auto& h : hypotheses) collect_candidates(h, raw);
  std::vector<TermPtr> candidates;
  std::set<std::string> keys;
  for (const auto& t : raw) {
    if (candidates.size() >= 24) break;
    if (!free_vars(t).empty() || std::holds_alternative<TNum>(t->node))
      if (keys.insert(atom_key(t)).second) candidates.push_back(t);
  }

  std::vector<PropPtr> rules;
  for (const auto& src : {premises, hypotheses})
    for (const auto& p : src)
      for (const auto& c : conjuncts(p))
        if (as_quant(c, Quantifier::Forall) || as_binop(c, PropBinOp::CImply)) rules.push_back(c);

  int checks = 0;
  for (int round = 0; round < 2; ++round) {
    for (const auto& r : rules) {
      std::vector<std::string> vars;
      PropPtr body = r;
      while (auto f = as_quant(body, Quantifier::Forall)) {
        vars.push_back(f->var);
        body = f->body;
      }
      if (vars.size() > 2) continue;
      std::vector<std::vector<TermPtr>> tuples;
      if (vars.empty()) tuples.push_back({});
      for (const auto& a : candidates) {
        if (vars.size() == 1) tuples.push_back({a});
        else if (vars.size() == 2)
          for (const auto& b : candidates) tuples.push_back({a, b});
      }
      for (const auto& tup : tuples) {
        PropPtr inst = body;
        // Simultaneous: route through placeholders so one instance cannot capture another.
        for (std::size_t i = 0; i < vars.size(); ++i) inst = substitute(inst, vars[i], mk::var("?" + vars[i]));
        for (std::size_t i = 0; i < vars.size(); ++i) inst = substitute(inst, "?" + vars[i], tup[i]);
        if (auto imp = as_binop(inst, PropBinOp::CImply)) {
          if (++checks > 400) break;
          if (fs.holds(imp->left)) fs.add(imp->right);
        } else if (!vars.empty()) {
          fs.add(inst);
        }
      }
    }
  }
  return fs.facts;
}

// ---- solvers ----------------------------------------------------------------------

namespace detail {

namespace {

bool closed(const PropPtr& p) { return free_vars(p).empty(); }

std::optional<bool> constant_truth(BinPred rel, const Rational& d) {
  switch (rel) {
    case BinPred::REq: return d == 0;
    case BinPred::RNe: return d != 0;
    case BinPred::RLt: return d < 0;
    case BinPred::RLe: return d <= 0;
    case BinPred::RGt: return d > 0;
    case BinPred::RGe: return d >= 0;
    default: return std::nullopt;
  }
}

SolveResult polynomial(const ProofGoal& g, const PropPtr& p) {
  auto s = strip(g, p);
  auto c = as_comparison(s.target);
  if (!c) return SolveResult::pass(p);
  auto judge = [&](const TermPtr& l, const TermPtr& r) -> std::optional<bool> {
    auto d = to_poly(mk::sub(l, r));
    if (!d) return std::nullopt;
    if (c->rel == BinPred::REq && d->is_zero()) return true;
    if (auto k = d->constant_value()) return constant_truth(c->rel, *k);
    return std::nullopt;
  };
  if (auto v = judge(c->left, c->right)) {
    if (*v) return SolveResult::accepted();
    // Contradictory premises entail anything, so only a premise-free false claim is refuted.
    if (closed(p) && s.hyps.empty() && g.premises.empty()) return SolveResult::rejected();
  }
  auto facts = premise_props(g);
  facts.insert(facts.end(), s.hyps.begin(), s.hyps.end());
  auto defs = collect_definitions(facts);
  if (!defs.empty()) {
    if (auto v = judge(beta_reduce(defs.rewrite(c->left)), beta_reduce(defs.rewrite(c->right))); v && *v)
      return SolveResult::accepted();
  }
  return SolveResult::pass(p);
}

SolveResult rational(const ProofGoal& g, const PropPtr& p) {
  auto s = strip(g, p);
  auto c = as_comparison(s.target);
  if (!c || c->rel != BinPred::REq) return SolveResult::pass(p);
  auto facts = premise_props(g);
  facts.insert(facts.end(), s.hyps.begin(), s.hyps.end());
  auto defs = collect_definitions(facts);
  std::vector<TermPtr> dens;
  auto l = to_ratfunc(defs.rewrite(c->left), &dens);
  auto r = to_ratfunc(defs.rewrite(c->right), &dens);
  if (!l || !r || !ratfunc_equal(*l, *r)) return SolveResult::pass(p);
  std::vector<PropPtr> obligations;
  std::set<std::string> seen;
  for (const auto& d : dens) {
    if (!seen.insert(atom_key(d)).second) continue;
    obligations.push_back(under(s.hyps, mk::ne(d, mk::num(0))));
  }
  return SolveResult::decomposed(obligations);
}

bool linear_target(const PropPtr& t) { return is_false(t) || as_comparison(t).has_value(); }

SolveResult linear(const ProofGoal& g, const PropPtr& p) {
  auto s = strip(g, p);
  if (!linear_target(s.target)) return SolveResult::pass(p);
  auto facts = saturate_facts(premise_props(g), s.hyps, s.target);
  if (linear_entails(facts, s.target)) return SolveResult::accepted();
  return SolveResult::pass(p);
}

int linear_priority(const PropPtr& p) {
  ProofGoal empty;
  return linear_target(strip(empty, p).target) ? 10 : 0;
}

}  // namespace

SolverSpec polynomial_solver() { return {"polynomial", polynomial, 1, 70, {}}; }
SolverSpec rational_solver() { return {"rational", rational, 1, 60, {}}; }
SolverSpec linear_solver() { return {"linear", linear, 2, 10, linear_priority}; }

}  // namespace detail

}  // namespace naproof
