#include "naproof/algebra.hpp"
#include "naproof/sexpr.hpp"
#include "solver_impl.hpp"

#include <cmath>
#include <set>

namespace naproof::detail {

namespace {

bool is_num(const TermPtr& t, long long v) {
  auto n = std::get_if<TNum>(&t->node);
  return n && n->value == v;
}

const TUnOpNode* as_unop(const TermPtr& t, TermUnOp op) {
  auto u = std::get_if<TUnOpNode>(&t->node);
  return u && u->op == op ? u : nullptr;
}

const TBinOpNode* as_tbinop(const TermPtr& t) { return std::get_if<TBinOpNode>(&t->node); }

const TBinOpNode* as_tbinop(const TermPtr& t, TermBinOp op) {
  auto b = as_tbinop(t);
  return b && b->op == op ? b : nullptr;
}

bool is_plus_infinity(const TermPtr& t) {
  auto i = std::get_if<TInfty>(&t->node);
  return i && i->sign == InftySign::Positive;
}

bool same_function(const TermPtr& a, const TermPtr& b) {
  auto x = to_ratfunc(a);
  auto y = to_ratfunc(b);
  return x && y && ratfunc_equal(*x, *y);
}

bool numerically_nonzero(const TermPtr& t) {
  auto v = evaluate(t, {});
  return v && std::isfinite(*v) && std::abs(*v) > 1e-12;
}

struct Equation {
  TermPtr left, right;
};

std::optional<Equation> target_equation(const PropPtr& t) {
  auto c = as_comparison(t);
  if (!c || c->rel != BinPred::REq) return std::nullopt;
  return Equation{c->left, c->right};
}

Definitions definitions_for(const ProofGoal& g, const Sequent& s) {
  auto facts = premise_props(g);
  facts.insert(facts.end(), s.hyps.begin(), s.hyps.end());
  return collect_definitions(facts);
}

std::vector<PropPtr> wrap(const std::vector<PropPtr>& hyps, const std::vector<PropPtr>& ps) {
  std::vector<PropPtr> out;
  for (const auto& p : ps) out.push_back(under(hyps, p));
  return out;
}

// ---- limits -----------------------------------------------------------------------

struct LimitView {
  TermPtr point;
  std::string var;
  TermPtr body;
};

std::optional<LimitView> as_limit(const TermPtr& t) {
  auto b = as_tbinop(t, TermBinOp::RLim);
  if (!b) return std::nullopt;
  auto lam = std::get_if<TBinder>(&b->right->node);
  if (!lam || lam->binder != Binder::LambdaB) return std::nullopt;
  return LimitView{b->left, lam->var, lam->body};
}

using KnownLimits = std::vector<std::pair<TermPtr, TermPtr>>;

KnownLimits known_limits(const std::vector<PropPtr>& facts) {
  KnownLimits out;
  for (const auto& f : facts)
    for (const auto& c : conjuncts(f))
      if (auto e = as_eq(c)) {
        if (as_limit(e->left)) out.emplace_back(e->left, e->right);
        else if (as_limit(e->right)) out.emplace_back(e->right, e->left);
      }
  return out;
}

// Closed-form entries of the limit table.
std::optional<TermPtr> table_limit(const LimitView& l) {
  auto v = mk::var(l.var);
  if (is_plus_infinity(l.point)) {
    if (auto p = as_tbinop(l.body, TermBinOp::Pow); p && equal(p->right, v)) {
      if (!occurs_free(l.var, p->left)) {
        auto c = evaluate(p->left, {});
        if (c && std::abs(*c) < 1) return mk::num(0);
      }
      if (same_function(p->left, mk::div(mk::add(v, mk::num(1)), v))) return mk::constant("e");
    }
    return std::nullopt;
  }
  if (!is_num(l.point, 0)) return std::nullopt;
  if (same_function(l.body, mk::div(mk::unop(TermUnOp::Sin, v), v))) return mk::num(1);
  if (same_function(l.body, mk::div(mk::sub(mk::num(1), mk::unop(TermUnOp::Cos, v)), v)))
    return mk::num(0);
  if (same_function(l.body, mk::div(mk::sub(mk::unop(TermUnOp::Exp, v), mk::num(1)), v)))
    return mk::num(1);
  if (same_function(l.body, mk::div(mk::unop(TermUnOp::Ln, mk::add(mk::num(1), v)), v)))
    return mk::num(1);
  return std::nullopt;
}

// c / g with g a polynomial in the limit variable that grows without bound.
bool vanishing_quotient(const LimitView& l) {
  auto d = as_tbinop(l.body, TermBinOp::Div);
  if (!d || occurs_free(l.var, d->left)) return false;
  auto g = normalize_poly(d->right);
  if (!g) return false;
  auto key = var_key(l.var);
  int deg = g->degree_in(key);
  if (deg < 1) return false;
  auto lead = g->coefficient(key, deg).constant_value();
  return lead && *lead != 0;
}

// Continuity of the body at a finite point; side conditions are appended to `side`.
bool continuous_at(const TermPtr& t, const std::string& v, const TermPtr& p, std::vector<PropPtr>& side) {
  if (!occurs_free(v, t)) return true;
  auto at = [&](const TermPtr& u) { return substitute(u, v, p); };
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TVar>) {
          return true;
        } else if constexpr (std::is_same_v<N, TUnOpNode>) {
          switch (n.op) {
            case TermUnOp::Neg:
            case TermUnOp::Sin:
            case TermUnOp::Cos:
            case TermUnOp::Exp:
            case TermUnOp::Abs:
              return continuous_at(n.arg, v, p, side);
            case TermUnOp::Ln:
            case TermUnOp::Sqrt:
              side.push_back(mk::gt(at(n.arg), mk::num(0)));
              return continuous_at(n.arg, v, p, side);
            case TermUnOp::Tan:
              side.push_back(mk::ne(mk::unop(TermUnOp::Cos, at(n.arg)), mk::num(0)));
              return continuous_at(n.arg, v, p, side);
            default:
              return false;
          }
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          switch (n.op) {
            case TermBinOp::Add:
            case TermBinOp::Sub:
            case TermBinOp::Mul:
              return continuous_at(n.left, v, p, side) && continuous_at(n.right, v, p, side);
            case TermBinOp::Div:
              side.push_back(mk::ne(at(n.right), mk::num(0)));
              return continuous_at(n.left, v, p, side) && continuous_at(n.right, v, p, side);
            case TermBinOp::Pow: {
              auto k = std::get_if<TNum>(&n.right->node);
              bool natural = k && k->value >= 0 && denominator(k->value) == 1;
              if (!natural) side.push_back(mk::gt(at(n.left), mk::num(0)));
              return continuous_at(n.left, v, p, side) && continuous_at(n.right, v, p, side);
            }
            default:
              return false;
          }
        } else {
          return false;
        }
      },
      t->node);
}

// Polynomial quotient in the limit variable alone.
struct PolyQuotient {
  Poly num, den;
};

std::optional<PolyQuotient> poly_quotient(const TermPtr& body, const std::string& v) {
  auto d = as_tbinop(body, TermBinOp::Div);
  if (!d) return std::nullopt;
  auto n = normalize_poly(d->left);
  auto m = normalize_poly(d->right);
  if (!n || !m) return std::nullopt;
  auto key = var_key(v);
  for (const auto* p : {&*n, &*m})
    for (const auto& [mono, c] : p->terms)
      for (const auto& [k, e] : mono)
        if (k != key) return std::nullopt;
  return PolyQuotient{*n, *m};
}

Rational eval_at(const Poly& p, const Rational& x) {
  Rational sum = 0;
  for (const auto& [mono, c] : p.terms) {
    Rational term = c;
    for (const auto& [k, e] : mono)
      for (int i = 0; i < e; ++i) term *= x;
    sum += term;
  }
  return sum;
}

Poly derivative(const Poly& p, const std::string& key) {
  Poly out;
  out.atoms = p.atoms;
  for (const auto& [mono, c] : p.terms) {
    auto it = mono.find(key);
    if (it == mono.end()) continue;
    Monomial m = mono;
    int e = it->second;
    if (e == 1) m.erase(key);
    else m[key] = e - 1;
    out.terms[m] += c * e;
  }
  for (auto it = out.terms.begin(); it != out.terms.end();)
    it = it->second == 0 ? out.terms.erase(it) : std::next(it);
  return out;
}

std::optional<TermPtr> rational_limit(const LimitView& l) {
  auto q = poly_quotient(l.body, l.var);
  if (!q || q->den.is_zero()) return std::nullopt;
  auto key = var_key(l.var);
  if (is_plus_infinity(l.point)) {
    int dn = q->num.degree_in(key), dd = q->den.degree_in(key);
    if (q->num.is_zero() || dn < dd) return mk::num(0);
    if (dn > dd) return std::nullopt;
    auto a = q->num.coefficient(key, dn).constant_value();
    auto b = q->den.coefficient(key, dd).constant_value();
    if (!a || !b || *b == 0) return std::nullopt;
    return mk::num(Rational(*a / *b));
  }
  auto pt = std::get_if<TNum>(&l.point->node);
  if (!pt) return std::nullopt;
  Poly n = q->num, d = q->den;
  for (int round = 0; round < 16; ++round) {
    Rational nv = eval_at(n, pt->value), dv = eval_at(d, pt->value);
    if (dv != 0) return mk::num(Rational(nv / dv));
    if (nv != 0) return std::nullopt;
    n = derivative(n, key);
    d = derivative(d, key);
    if (d.is_zero()) return std::nullopt;
  }
  return std::nullopt;
}

TermPtr combine(TermBinOp op, const TermPtr& a, const TermPtr& b) {
  return simplify(mk::binop(op, a, b));
}

// False closed side conditions (a zero denominator at the point) rule out plain substitution.
bool sides_plausible(const std::vector<PropPtr>& side) {
  return std::all_of(side.begin(), side.end(), [](const PropPtr& s) {
    auto c = as_comparison(s);
    return !c || !free_vars(c->left).empty() || numerically_nonzero(c->left);
  });
}

std::optional<TermPtr> limit_value(const LimitView& l, const KnownLimits& known, int depth) {
  auto whole = mk::limit(l.point, l.var, l.body);
  for (const auto& [lim, val] : known)
    if (alpha_equal(lim, whole)) return val;
  if (depth > 12) return std::nullopt;
  if (!occurs_free(l.var, l.body)) return l.body;
  if (auto t = table_limit(l)) return t;
  if (is_plus_infinity(l.point) && vanishing_quotient(l)) return mk::num(0);
  if (auto r = rational_limit(l)) return r;
  if (!is_plus_infinity(l.point)) {
    std::vector<PropPtr> side;
    if (continuous_at(l.body, l.var, l.point, side)) {
      auto v = simplify(beta_reduce(substitute(l.body, l.var, l.point)));
      if (sides_plausible(side)) return v;
    }
  }
  if (auto u = as_unop(l.body, TermUnOp::Neg)) {
    if (auto a = limit_value({l.point, l.var, u->arg}, known, depth + 1)) return simplify(mk::neg(*a));
    return std::nullopt;
  }
  auto b = as_tbinop(l.body);
  if (!b || b->op == TermBinOp::Pow || b->op == TermBinOp::RLim) return std::nullopt;
  auto a = limit_value({l.point, l.var, b->left}, known, depth + 1);
  if (!a) return std::nullopt;
  auto c = limit_value({l.point, l.var, b->right}, known, depth + 1);
  if (!c) return std::nullopt;
  if (b->op == TermBinOp::Div && !numerically_nonzero(*c)) return std::nullopt;
  return combine(b->op, *a, *c);
}

// Limits nested inside a comparison are replaced by their values, each with its own goal.
SolveResult embedded_limits(const ProofGoal& g, const PropPtr& p, const Sequent& s) {
  if (!as_comparison(s.target)) return SolveResult::pass(p);
  auto defs = definitions_for(g, s);
  auto facts = premise_props(g);
  facts.insert(facts.end(), s.hyps.begin(), s.hyps.end());
  auto known = known_limits(facts);
  std::vector<PropPtr> out;
  bool failed = false;
  auto replace = [&](const TermPtr& t) -> TermPtr {
    auto l = as_limit(t);
    if (!l || failed) return t;
    auto v = limit_value({l->point, l->var, beta_reduce(defs.rewrite(l->body))}, known, 0);
    if (!v) {
      failed = true;
      return t;
    }
    out.push_back(mk::eq(t, *v));
    return *v;
  };
  auto c = as_comparison(s.target);
  auto rewritten = mk::binpred(c->rel, map_subterms(c->left, replace), map_subterms(c->right, replace));
  if (failed || out.empty()) return SolveResult::pass(p);
  out.push_back(rewritten);
  return SolveResult::decomposed(wrap(s.hyps, out));
}

SolveResult limit(const ProofGoal& g, const PropPtr& p) {
  auto s = strip(g, p);
  auto e = target_equation(s.target);
  if (!e) return embedded_limits(g, p, s);
  auto lim = as_limit(e->left);
  TermPtr value = e->right;
  if (!lim) {
    lim = as_limit(e->right);
    value = e->left;
  }
  if (!lim) return embedded_limits(g, p, s);
  auto defs = definitions_for(g, s);
  LimitView l{lim->point, lim->var, beta_reduce(defs.rewrite(lim->body))};
  auto facts = premise_props(g);
  facts.insert(facts.end(), s.hyps.begin(), s.hyps.end());
  auto known = known_limits(facts);
  auto eq = [&](const TermPtr& v) { return mk::eq(v, value); };

  if (!occurs_free(l.var, l.body)) return SolveResult::decomposed(wrap(s.hyps, {eq(l.body)}));
  if (auto t = table_limit(l)) return SolveResult::decomposed(wrap(s.hyps, {eq(*t)}));
  if (is_plus_infinity(l.point)) {
    if (vanishing_quotient(l)) return SolveResult::decomposed(wrap(s.hyps, {eq(mk::num(0))}));
  } else {
    std::vector<PropPtr> side;
    if (continuous_at(l.body, l.var, l.point, side) && sides_plausible(side)) {
      std::vector<PropPtr> out{eq(beta_reduce(substitute(l.body, l.var, l.point)))};
      out.insert(out.end(), side.begin(), side.end());
      return SolveResult::decomposed(wrap(s.hyps, out));
    }
  }

  auto sub = [&](const TermPtr& body) { return LimitView{l.point, l.var, body}; };
  auto lim_eq = [&](const TermPtr& body, const TermPtr& v) {
    return mk::eq(mk::limit(l.point, l.var, body), v);
  };
  if (auto u = as_unop(l.body, TermUnOp::Neg)) {
    auto a = limit_value(sub(u->arg), known, 0);
    if (!a) return SolveResult::pass(p);
    return SolveResult::decomposed(wrap(s.hyps, {lim_eq(u->arg, *a), eq(mk::neg(*a))}));
  }
  auto b = as_tbinop(l.body);
  if (!b || (b->op != TermBinOp::Add && b->op != TermBinOp::Sub && b->op != TermBinOp::Mul &&
             b->op != TermBinOp::Div))
    return SolveResult::pass(p);
  auto a = limit_value(sub(b->left), known, 0);
  auto c = limit_value(sub(b->right), known, 0);
  if (!a || !c) return SolveResult::pass(p);
  std::vector<PropPtr> out{lim_eq(b->left, *a), lim_eq(b->right, *c),
                           eq(mk::binop(b->op, *a, *c))};
  if (b->op == TermBinOp::Div) out.push_back(mk::ne(*c, mk::num(0)));
  return SolveResult::decomposed(wrap(s.hyps, out));
}

bool mentions_limit(const PropPtr& p) {
  return any_subterm(p, [](const TermPtr& t) { return as_tbinop(t, TermBinOp::RLim) != nullptr; });
}

int limit_priority(const PropPtr& p) { return mentions_limit(p) ? 10 : 0; }

SolveResult limit_rational(const ProofGoal& g, const PropPtr& p) {
  auto s = strip(g, p);
  auto e = target_equation(s.target);
  if (!e) return SolveResult::pass(p);
  auto lim = as_limit(e->left);
  TermPtr value = e->right;
  if (!lim) {
    lim = as_limit(e->right);
    value = e->left;
  }
  if (!lim) return SolveResult::pass(p);
  auto defs = definitions_for(g, s);
  LimitView l{lim->point, lim->var, beta_reduce(defs.rewrite(lim->body))};
  auto r = rational_limit(l);
  if (!r) return SolveResult::pass(p);
  return SolveResult::decomposed(wrap(s.hyps, {mk::eq(*r, value)}));
}

// ---- trigonometry -----------------------------------------------------------------

TermPtr half_sqrt(long long k) { return mk::div(mk::unop(TermUnOp::Sqrt, mk::num(k)), mk::num(2)); }

// sin(q pi) for rational q, when q lies on the usual grid.
std::optional<TermPtr> sin_of_pi_multiple(Rational q) {
  Rational two = 2;
  while (q < 0) q += two;
  while (q >= two) q -= two;
  bool negative = false;
  if (q >= 1) {
    q -= 1;
    negative = true;
  }
  if (q > Rational(1, 2)) q = Rational(1) - q;
  TermPtr v;
  if (q == 0) v = mk::num(0);
  else if (q == Rational(1, 6)) v = mk::num(Rational(1, 2));
  else if (q == Rational(1, 4)) v = half_sqrt(2);
  else if (q == Rational(1, 3)) v = half_sqrt(3);
  else if (q == Rational(1, 2)) v = mk::num(1);
  else return std::nullopt;
  return negative ? simplify(mk::neg(v)) : v;
}

std::optional<Rational> pi_multiple(const TermPtr& t) {
  auto p = to_poly(t);
  if (!p) return std::nullopt;
  if (p->is_zero()) return Rational(0);
  if (p->terms.size() != 1) return std::nullopt;
  const auto& [mono, c] = *p->terms.begin();
  if (mono.size() != 1 || mono.begin()->second != 1) return std::nullopt;
  if (mono.begin()->first != atom_key(mk::constant("pi"))) return std::nullopt;
  return c;
}

TermPtr trig_step(const TermPtr& t) {
  using U = TermUnOp;
  auto u = std::get_if<TUnOpNode>(&t->node);
  if (!u || (u->op != U::Sin && u->op != U::Cos && u->op != U::Tan)) return t;
  const auto& x = u->arg;
  auto sin = [](const TermPtr& a) { return mk::unop(U::Sin, a); };
  auto cos = [](const TermPtr& a) { return mk::unop(U::Cos, a); };
  if (u->op == U::Tan) return mk::div(sin(x), cos(x));
  bool is_sin = u->op == U::Sin;
  if (auto q = pi_multiple(x)) {
    if (auto v = sin_of_pi_multiple(is_sin ? *q : Rational(*q + Rational(1, 2)))) return *v;
  }
  if (auto n = as_unop(x, U::Neg)) return is_sin ? mk::neg(sin(n->arg)) : cos(n->arg);
  if (auto b = as_tbinop(x)) {
    const auto &a = b->left, &c = b->right;
    if (b->op == TermBinOp::Add)
      return is_sin ? mk::add(mk::mul(sin(a), cos(c)), mk::mul(cos(a), sin(c)))
                    : mk::sub(mk::mul(cos(a), cos(c)), mk::mul(sin(a), sin(c)));
    if (b->op == TermBinOp::Sub)
      return is_sin ? mk::sub(mk::mul(sin(a), cos(c)), mk::mul(cos(a), sin(c)))
                    : mk::add(mk::mul(cos(a), cos(c)), mk::mul(sin(a), sin(c)));
    if (b->op == TermBinOp::Mul && is_num(a, 2))
      return is_sin ? mk::mul(mk::num(2), mk::mul(sin(c), cos(c)))
                    : mk::sub(mk::pow(cos(c), mk::num(2)), mk::pow(sin(c), mk::num(2)));
  }
  return t;
}

TermPtr rewrite_fixpoint(const TermPtr& t, const std::function<TermPtr(const TermPtr&)>& step) {
  TermPtr cur = t;
  for (int pass = 0; pass < 8; ++pass) {
    auto next = map_subterms(cur, step);
    if (equal(next, cur)) break;
    cur = next;
  }
  return cur;
}

Poly monomial_poly(const Monomial& m, const Rational& c, const Poly& like) {
  Poly out;
  out.atoms = like.atoms;
  if (c != 0) out.terms[m] = c;
  return out;
}

// cos^2 u -> 1 - sin^2 u and sqrt(c)^2 -> c, until neither applies.
Poly reduce_squares(Poly p) {
  for (int round = 0; round < 64; ++round) {
    bool changed = false;
    Poly out;
    out.atoms = p.atoms;
    for (const auto& [mono, c] : p.terms) {
      std::optional<Poly> replaced;
      for (const auto& [k, e] : mono) {
        if (e < 2) continue;
        auto it = p.atoms.find(k);
        if (it == p.atoms.end()) continue;
        Monomial rest = mono;
        if (e == 2) rest.erase(k);
        else rest[k] = e - 2;
        if (auto cu = as_unop(it->second, TermUnOp::Cos)) {
          auto s = Poly::atom(mk::unop(TermUnOp::Sin, cu->arg));
          replaced = monomial_poly(rest, c, p) * (Poly::constant(1) - s * s);
          break;
        }
        if (auto sq = as_unop(it->second, TermUnOp::Sqrt)) {
          auto n = std::get_if<TNum>(&sq->arg->node);
          if (n && n->value >= 0) {
            replaced = monomial_poly(rest, c * n->value, p);
            break;
          }
        }
      }
      if (replaced) {
        out = out + *replaced;
        changed = true;
      } else {
        out = out + monomial_poly(mono, c, p);
      }
    }
    p = out;
    if (!changed) break;
  }
  return p;
}

bool equal_after_reduction(const TermPtr& l, const TermPtr& r, std::vector<TermPtr>& dens) {
  auto a = to_ratfunc(l, &dens);
  auto b = to_ratfunc(r, &dens);
  if (!a || !b) return false;
  return reduce_squares(a->num * b->den - b->num * a->den).is_zero();
}

std::vector<PropPtr> denominator_goals(const std::vector<TermPtr>& dens) {
  std::vector<PropPtr> out;
  std::set<std::string> seen;
  for (const auto& d : dens)
    if (seen.insert(atom_key(d)).second) out.push_back(mk::ne(d, mk::num(0)));
  return out;
}

bool mentions_trig(const PropPtr& p) {
  return has_op(p, TermUnOp::Sin) || has_op(p, TermUnOp::Cos) || has_op(p, TermUnOp::Tan);
}

SolveResult trig(const ProofGoal& g, const PropPtr& p) {
  auto s = strip(g, p);
  auto e = target_equation(s.target);
  if (!e || !mentions_trig(s.target)) return SolveResult::pass(p);
  auto defs = definitions_for(g, s);
  auto l = rewrite_fixpoint(defs.rewrite(e->left), trig_step);
  auto r = rewrite_fixpoint(defs.rewrite(e->right), trig_step);
  std::vector<TermPtr> dens;
  if (!equal_after_reduction(l, r, dens)) return SolveResult::pass(p);
  return SolveResult::decomposed(wrap(s.hyps, denominator_goals(dens)));
}

int trig_priority(const PropPtr& p) { return mentions_trig(p) ? 10 : 0; }

// ---- exponentials and logarithms ----------------------------------------------------

std::vector<std::pair<long long, int>> factorize(long long n) {
  std::vector<std::pair<long long, int>> out;
  for (long long f = 2; f * f <= n; ++f) {
    int k = 0;
    while (n % f == 0) {
      n /= f;
      ++k;
    }
    if (k) out.emplace_back(f, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

struct ExpLogRewriter {
  std::vector<PropPtr> side;

  TermPtr step(const TermPtr& t) {
    using U = TermUnOp;
    auto ln = [](const TermPtr& a) { return mk::unop(U::Ln, a); };
    auto exp = [](const TermPtr& a) { return mk::unop(U::Exp, a); };
    auto positive = [&](const TermPtr& a) { side.push_back(mk::gt(a, mk::num(0))); };
    if (auto p = as_tbinop(t, TermBinOp::Pow)) {
      if (auto c = std::get_if<TConst>(&p->left->node); c && c->name == "e") return exp(p->right);
      if (auto sq = as_unop(p->left, U::Sqrt); sq && is_num(p->right, 2)) {
        side.push_back(mk::ge(sq->arg, mk::num(0)));
        return sq->arg;
      }
      return t;
    }
    if (auto sq = as_unop(t, U::Sqrt)) {
      if (auto p = as_tbinop(sq->arg, TermBinOp::Pow); p && is_num(p->right, 2))
        return mk::unop(U::Abs, p->left);
      return t;
    }
    if (auto x = as_unop(t, U::Exp)) {
      const auto& a = x->arg;
      if (is_num(a, 0)) return mk::num(1);
      if (is_num(a, 1)) return mk::constant("e");
      if (auto l = as_unop(a, U::Ln)) {
        positive(l->arg);
        return l->arg;
      }
      if (auto b = as_tbinop(a, TermBinOp::Add)) return mk::mul(exp(b->left), exp(b->right));
      if (auto b = as_tbinop(a, TermBinOp::Sub)) return mk::div(exp(b->left), exp(b->right));
      return t;
    }
    auto l = as_unop(t, U::Ln);
    if (!l) return t;
    const auto& a = l->arg;
    if (is_num(a, 1)) return mk::num(0);
    if (auto c = std::get_if<TConst>(&a->node); c && c->name == "e") return mk::num(1);
    if (auto x = as_unop(a, U::Exp)) return x->arg;
    if (auto n = std::get_if<TNum>(&a->node); n && n->value > 0) {
      auto num = numerator(n->value), den = denominator(n->value);
      if (den != 1) return mk::sub(ln(mk::num(Rational(num))), ln(mk::num(Rational(den))));
      if (num > 1000000000) return t;
      auto f = factorize(num.convert_to<long long>());
      if (f.size() == 1 && f[0].second == 1) return t;
      TermPtr sum;
      for (const auto& [prime, k] : f) {
        TermPtr term = mk::mul(mk::num(k), ln(mk::num(prime)));
        sum = sum ? mk::add(sum, term) : term;
      }
      return sum;
    }
    if (auto b = as_tbinop(a)) {
      if (b->op == TermBinOp::Mul || b->op == TermBinOp::Div) {
        positive(b->left);
        positive(b->right);
        return b->op == TermBinOp::Mul ? mk::add(ln(b->left), ln(b->right))
                                       : mk::sub(ln(b->left), ln(b->right));
      }
      if (b->op == TermBinOp::Pow) {
        positive(b->left);
        return mk::mul(b->right, ln(b->left));
      }
    }
    return t;
  }
};

bool mentions_explog(const PropPtr& p) {
  return has_op(p, TermUnOp::Exp) || has_op(p, TermUnOp::Ln) || has_op(p, TermUnOp::Sqrt) ||
         any_subterm(p, [](const TermPtr& t) {
           auto c = std::get_if<TConst>(&t->node);
           return c && c->name == "e";
         });
}

SolveResult explog(const ProofGoal& g, const PropPtr& p) {
  auto s = strip(g, p);
  auto e = target_equation(s.target);
  if (!e || !mentions_explog(s.target)) return SolveResult::pass(p);
  auto defs = definitions_for(g, s);
  ExpLogRewriter rw;
  auto step = [&](const TermPtr& t) { return rw.step(t); };
  auto l = rewrite_fixpoint(defs.rewrite(e->left), step);
  auto r = rewrite_fixpoint(defs.rewrite(e->right), step);
  std::vector<TermPtr> dens;
  if (!equal_after_reduction(l, r, dens)) return SolveResult::pass(p);
  auto goals = denominator_goals(dens);
  std::set<std::string> seen;
  for (const auto& q : rw.side)
    if (seen.insert(to_sexpr(q)).second) goals.push_back(q);
  return SolveResult::decomposed(wrap(s.hyps, goals));
}

int explog_priority(const PropPtr& p) { return mentions_explog(p) ? 10 : 0; }

// ---- derivatives ------------------------------------------------------------------

bool mentions_derivative(const PropPtr& p) { return has_op(p, TermUnOp::Deriv); }

SolveResult derivative_solve(const ProofGoal& g, const PropPtr& p) {
  auto s = strip(g, p);
  if (!mentions_derivative(s.target)) return SolveResult::pass(p);
  auto defs = definitions_for(g, s);
  bool changed = false;
  auto expand = [&](const TermPtr& t) -> TermPtr {
    auto d = as_unop(t, TermUnOp::Deriv);
    if (!d) return t;
    TermPtr fn = d->arg;
    if (auto v = as_var(fn)) {
      for (const auto& [name, lam] : defs.functions)
        if (name == v->name) fn = lam;
    }
    auto lam = std::get_if<TBinder>(&fn->node);
    if (!lam || lam->binder != Binder::LambdaB) return t;
    changed = true;
    return mk::lambda(lam->var, simplify(differentiate(lam->body, lam->var)));
  };
  auto target = beta_reduce(map_terms(s.target, expand));
  if (!changed) return SolveResult::pass(p);
  if (auto e = as_eq(target)) {
    auto a = std::get_if<TBinder>(&e->left->node);
    auto b = std::get_if<TBinder>(&e->right->node);
    if (a && b && a->binder == Binder::LambdaB && b->binder == Binder::LambdaB) {
      VarSet avoid = free_vars(target);
      auto x = fresh_name(a->var, avoid);
      target = mk::forall(x, mk::eq(substitute(a->body, a->var, mk::var(x)),
                                    substitute(b->body, b->var, mk::var(x))));
    }
  }
  return SolveResult::decomposed({under(s.hyps, target)});
}

int derivative_priority(const PropPtr& p) { return mentions_derivative(p) ? 10 : 0; }

}  // namespace

SolverSpec limit_solver() { return {"limit", limit, 2, 10, limit_priority}; }
SolverSpec limit_rational_solver() { return {"limit_rational", limit_rational, 2, 10, limit_priority}; }
SolverSpec trig_solver() { return {"trig", trig, 2, 10, trig_priority}; }
SolverSpec explog_solver() { return {"explog", explog, 2, 10, explog_priority}; }
SolverSpec derivative_solver() { return {"derivative", derivative_solve, 2, 10, derivative_priority}; }

}  // namespace naproof::detail
