#include "naproof/algebra.hpp"

#include "naproof/ast_ops.hpp"
#include "naproof/sexpr.hpp"

#include <cmath>

namespace naproof {

namespace {

bool is_int(const Rational& r) { return denominator(r) == 1; }

std::string rat_str(const Rational& r) { return r.str(); }

}  // namespace

// ---- Poly ---------------------------------------------------------------------

Poly Poly::constant(const Rational& c) {
  Poly p;
  if (c != 0) p.terms[{}] = c;
  return p;
}

Poly Poly::atom(const TermPtr& t) {
  Poly p;
  auto key = atom_key(t);
  p.atoms[key] = t;
  p.terms[{{key, 1}}] = 1;
  return p;
}

std::optional<Rational> Poly::constant_value() const {
  if (terms.empty()) return Rational(0);
  if (terms.size() == 1 && terms.begin()->first.empty()) return terms.begin()->second;
  return std::nullopt;
}

int Poly::degree_in(const std::string& key) const {
  int d = 0;
  for (const auto& [m, c] : terms) {
    auto it = m.find(key);
    if (it != m.end()) d = std::max(d, it->second);
  }
  return d;
}

int Poly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms) {
    int s = 0;
    for (const auto& [k, e] : m) s += e;
    d = std::max(d, s);
  }
  return d;
}

Poly Poly::coefficient(const std::string& key, int k) const {
  Poly out;
  out.atoms = atoms;
  for (const auto& [m, c] : terms) {
    auto it = m.find(key);
    int e = it == m.end() ? 0 : it->second;
    if (e != k) continue;
    Monomial rest = m;
    rest.erase(key);
    out.terms[rest] += c;
  }
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  Poly out = *this;
  out.atoms.insert(o.atoms.begin(), o.atoms.end());
  for (const auto& [m, c] : o.terms) {
    auto& slot = out.terms[m];
    slot += c;
    if (slot == 0) out.terms.erase(m);
  }
  return out;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [m, c] : out.terms) c = -c;
  return out;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  Poly out;
  out.atoms = atoms;
  out.atoms.insert(o.atoms.begin(), o.atoms.end());
  for (const auto& [m1, c1] : terms) {
    for (const auto& [m2, c2] : o.terms) {
      Monomial m = m1;
      for (const auto& [k, e] : m2) m[k] += e;
      auto& slot = out.terms[m];
      slot += c1 * c2;
      if (slot == 0) out.terms.erase(m);
    }
  }
  return out;
}

Poly Poly::pow(unsigned k) const {
  Poly out = constant(1);
  out.atoms = atoms;
  Poly base = *this;
  while (k) {
    if (k & 1) out = out * base;
    base = base * base;
    k >>= 1;
  }
  return out;
}

// ---- canonical keys -------------------------------------------------------------

std::string var_key(const std::string& name) { return "(TVar \"" + name + "\")"; }

namespace {

std::string poly_key(const Poly& p) {
  std::string s = "[";
  for (const auto& [m, c] : p.terms) {
    s += rat_str(c);
    for (const auto& [k, e] : m) s += "*" + k + "^" + std::to_string(e);
    s += ";";
  }
  return s + "]";
}

std::string arith_key(const TermPtr& t) {
  if (auto p = to_poly(t)) return poly_key(*p);
  return atom_key(t);
}

thread_local int binder_depth = 0;

// Replaces a bound name by a position-dependent placeholder so alpha-variants share keys.
TermPtr rename_bound(const TermPtr& body, const std::string& var, std::string& placeholder) {
  placeholder = "#" + std::to_string(binder_depth);
  return substitute(body, var, mk::var(placeholder));
}

std::optional<Poly> poly_of(const TermPtr& t);

}  // namespace

std::string atom_key(const TermPtr& t) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TVar>) {
          return var_key(n.name);
        } else if constexpr (std::is_same_v<N, TNum>) {
          return rat_str(n.value);
        } else if constexpr (std::is_same_v<N, TUnOpNode>) {
          return "(" + std::string(name_of(n.op)) + " " + arith_key(n.arg) + ")";
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          return "(" + std::string(name_of(n.op)) + " " + arith_key(n.left) + " " +
                 arith_key(n.right) + ")";
        } else if constexpr (std::is_same_v<N, TApply>) {
          return "(App " + atom_key(n.fn) + " " + arith_key(n.arg) + ")";
        } else if constexpr (std::is_same_v<N, TBinder>) {
          std::string ph;
          auto body = rename_bound(n.body, n.var, ph);
          ++binder_depth;
          auto k = "(" + std::string(name_of(n.binder)) + " " + arith_key(body) + ")";
          --binder_depth;
          return k;
        } else if constexpr (std::is_same_v<N, TInterval>) {
          return "(" + std::string(name_of(n.kind)) + " " + arith_key(n.lo) + " " +
                 arith_key(n.hi) + ")";
        } else if constexpr (std::is_same_v<N, TSet>) {
          auto elem = n.element;
          auto cond = n.condition;
          int saved = binder_depth;
          for (const auto& v : n.vars) {
            auto ph = "#" + std::to_string(binder_depth++);
            elem = substitute(elem, v, mk::var(ph));
            cond = substitute(cond, v, mk::var(ph));
          }
          auto k = "(Set " + std::to_string(n.vars.size()) + " " + arith_key(elem) + " " +
                   to_sexpr(cond) + ")";
          binder_depth = saved;
          return k;
        } else {
          return to_sexpr(t);
        }
      },
      t->node);
}

// ---- polynomial views -----------------------------------------------------------

namespace {

std::optional<Poly> poly_of(const TermPtr& t) {
  if (auto n = std::get_if<TNum>(&t->node)) return Poly::constant(n->value);
  if (std::holds_alternative<TInfty>(t->node)) return std::nullopt;
  if (auto u = std::get_if<TUnOpNode>(&t->node); u && u->op == TermUnOp::Neg) {
    auto a = poly_of(u->arg);
    if (!a) return std::nullopt;
    return -*a;
  }
  if (auto b = std::get_if<TBinOpNode>(&t->node)) {
    switch (b->op) {
      case TermBinOp::Add:
      case TermBinOp::Sub:
      case TermBinOp::Mul: {
        auto l = poly_of(b->left), r = poly_of(b->right);
        if (!l || !r) return std::nullopt;
        if (b->op == TermBinOp::Add) return *l + *r;
        if (b->op == TermBinOp::Sub) return *l - *r;
        return *l * *r;
      }
      case TermBinOp::Div: {
        auto l = poly_of(b->left), r = poly_of(b->right);
        if (!l || !r) return std::nullopt;
        auto c = r->constant_value();
        if (c && *c != 0) return *l * Poly::constant(Rational(1) / *c);
        break;
      }
      case TermBinOp::Pow: {
        auto base = poly_of(b->left);
        auto e = poly_of(b->right);
        if (!base || !e) return std::nullopt;
        auto k = e->constant_value();
        if (k && is_int(*k)) {
          auto ki = numerator(*k);
          if (ki >= 0 && ki <= 64) return base->pow(static_cast<unsigned>(ki));
          auto bc = base->constant_value();
          if (bc && *bc != 0 && ki < 0 && ki >= -64) {
            return Poly::constant(Rational(1) / *bc).pow(static_cast<unsigned>(-ki));
          }
        }
        break;
      }
      case TermBinOp::RLim:
        break;
    }
  }
  return Poly::atom(t);
}

bool only_variables(const Poly& p) {
  for (const auto& [k, t] : p.atoms)
    if (!std::holds_alternative<TVar>(t->node)) return false;
  return true;
}

}  // namespace

std::optional<Poly> to_poly(const TermPtr& t) { return poly_of(t); }

std::optional<Poly> normalize_poly(const TermPtr& t) {
  auto p = poly_of(t);
  if (!p || !only_variables(*p)) return std::nullopt;
  return p;
}

TermPtr from_poly(const Poly& p) {
  if (p.terms.empty()) return mk::num(0);
  std::vector<std::pair<Monomial, Rational>> order(p.terms.begin(), p.terms.end());
  auto deg = [](const Monomial& m) {
    int s = 0;
    for (const auto& [k, e] : m) s += e;
    return s;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](const auto& a, const auto& b) { return deg(a.first) > deg(b.first); });
  TermPtr out;
  for (const auto& [m, c] : order) {
    Rational mag = c < 0 ? Rational(-c) : c;
    TermPtr mono;
    for (const auto& [k, e] : m) {
      TermPtr a = p.atoms.at(k);
      if (e != 1) a = mk::pow(a, mk::num(static_cast<long long>(e)));
      mono = mono ? mk::mul(mono, a) : a;
    }
    if (!mono) mono = mk::num(mag);
    else if (mag != 1) mono = mk::mul(mk::num(mag), mono);
    if (!out) out = c < 0 ? mk::neg(mono) : mono;
    else out = c < 0 ? mk::sub(out, mono) : mk::add(out, mono);
  }
  return out;
}

std::optional<RatFunc> to_ratfunc(const TermPtr& t, std::vector<TermPtr>* denominators) {
  auto poly1 = [](const Poly& p) { return RatFunc{p, Poly::constant(1)}; };
  if (auto u = std::get_if<TUnOpNode>(&t->node); u && u->op == TermUnOp::Neg) {
    auto a = to_ratfunc(u->arg, denominators);
    if (!a) return std::nullopt;
    return RatFunc{-a->num, a->den};
  }
  if (auto b = std::get_if<TBinOpNode>(&t->node)) {
    if (b->op == TermBinOp::Add || b->op == TermBinOp::Sub || b->op == TermBinOp::Mul ||
        b->op == TermBinOp::Div) {
      auto l = to_ratfunc(b->left, denominators);
      auto r = to_ratfunc(b->right, denominators);
      if (!l || !r) return std::nullopt;
      switch (b->op) {
        case TermBinOp::Add: return RatFunc{l->num * r->den + r->num * l->den, l->den * r->den};
        case TermBinOp::Sub: return RatFunc{l->num * r->den - r->num * l->den, l->den * r->den};
        case TermBinOp::Mul: return RatFunc{l->num * r->num, l->den * r->den};
        default: {
          if (r->num.is_zero()) return std::nullopt;
          if (denominators && !r->num.constant_value()) denominators->push_back(b->right);
          return RatFunc{l->num * r->den, l->den * r->num};
        }
      }
    }
    if (b->op == TermBinOp::Pow) {
      auto e = poly_of(b->right);
      auto k = e ? e->constant_value() : std::nullopt;
      if (k && is_int(*k) && abs(numerator(*k)) <= 64) {
        auto base = to_ratfunc(b->left, denominators);
        if (!base) return std::nullopt;
        auto ki = numerator(*k);
        unsigned m = static_cast<unsigned>(ki < 0 ? -ki : ki);
        if (ki >= 0) return RatFunc{base->num.pow(m), base->den.pow(m)};
        if (base->num.is_zero()) return std::nullopt;
        if (denominators && !base->num.constant_value()) denominators->push_back(b->left);
        return RatFunc{base->den.pow(m), base->num.pow(m)};
      }
    }
  }
  auto p = poly_of(t);
  if (!p) return std::nullopt;
  return poly1(*p);
}

bool ratfunc_equal(const RatFunc& a, const RatFunc& b) {
  return (a.num * b.den - b.num * a.den).is_zero();
}

TermPtr simplify(const TermPtr& t) {
  auto p = to_poly(t);
  return p ? from_poly(*p) : t;
}

// ---- differentiation ------------------------------------------------------------

namespace {

bool is_num(const TermPtr& t, long long v) {
  auto n = as_num(t);
  return n && n->value == v;
}

TermPtr add(TermPtr a, TermPtr b) {
  if (is_num(a, 0)) return b;
  if (is_num(b, 0)) return a;
  return mk::add(a, b);
}

TermPtr sub(TermPtr a, TermPtr b) {
  if (is_num(b, 0)) return a;
  if (is_num(a, 0)) return mk::neg(b);
  return mk::sub(a, b);
}

TermPtr mul(TermPtr a, TermPtr b) {
  if (is_num(a, 0) || is_num(b, 0)) return mk::num(0);
  if (is_num(a, 1)) return b;
  if (is_num(b, 1)) return a;
  return mk::mul(a, b);
}

TermPtr div(TermPtr a, TermPtr b) {
  if (is_num(a, 0)) return mk::num(0);
  if (is_num(b, 1)) return a;
  return mk::div(a, b);
}

TermPtr un(TermUnOp op, TermPtr a) { return mk::unop(op, a); }

}  // namespace

TermPtr differentiate(const TermPtr& t, const std::string& x) {
  if (!occurs_free(x, t)) {
    if (std::holds_alternative<TInfty>(t->node) || std::holds_alternative<TSet>(t->node) ||
        std::holds_alternative<TInterval>(t->node))
      throw UnsupportedOperator("cannot differentiate " + to_sexpr(t));
    return mk::num(0);
  }
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TVar>) {
          return mk::num(1);
        } else if constexpr (std::is_same_v<N, TUnOpNode>) {
          auto du = [&] { return differentiate(n.arg, x); };
          const auto& u = n.arg;
          switch (n.op) {
            case TermUnOp::Neg: {
              auto d = du();
              return is_num(d, 0) ? d : mk::neg(d);
            }
            case TermUnOp::Sin: return mul(un(TermUnOp::Cos, u), du());
            case TermUnOp::Cos: return mul(mk::neg(un(TermUnOp::Sin, u)), du());
            case TermUnOp::Tan:
              return div(du(), mk::pow(un(TermUnOp::Cos, u), mk::num(2)));
            case TermUnOp::Ln: return div(du(), u);
            case TermUnOp::Exp: return mul(un(TermUnOp::Exp, u), du());
            case TermUnOp::Sqrt: return div(du(), mul(mk::num(2), un(TermUnOp::Sqrt, u)));
            case TermUnOp::Abs: return mul(div(u, un(TermUnOp::Abs, u)), du());
            default:
              throw UnsupportedOperator("cannot differentiate operator " +
                                        std::string(name_of(n.op)));
          }
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          const auto &l = n.left, &r = n.right;
          switch (n.op) {
            case TermBinOp::Add: return add(differentiate(l, x), differentiate(r, x));
            case TermBinOp::Sub: return sub(differentiate(l, x), differentiate(r, x));
            case TermBinOp::Mul:
              return add(mul(differentiate(l, x), r), mul(l, differentiate(r, x)));
            case TermBinOp::Div:
              return div(sub(mul(differentiate(l, x), r), mul(l, differentiate(r, x))),
                         mk::pow(r, mk::num(2)));
            case TermBinOp::Pow: {
              if (!occurs_free(x, r)) {
                TermPtr e1;
                if (auto k = as_num(r)) e1 = mk::num(Rational(k->value - 1));
                else e1 = mk::sub(r, mk::num(1));
                TermPtr powered = is_num(e1, 1) ? l : mk::pow(l, e1);
                return mul(mul(r, powered), differentiate(l, x));
              }
              auto c = std::get_if<TConst>(&l->node);
              if (c && c->name == "e") return mul(t, differentiate(r, x));
              if (!occurs_free(x, l))
                return mul(mul(t, un(TermUnOp::Ln, l)), differentiate(r, x));
              return mul(t, add(mul(differentiate(r, x), un(TermUnOp::Ln, l)),
                                div(mul(r, differentiate(l, x)), l)));
            }
            case TermBinOp::RLim:
              throw UnsupportedOperator("cannot differentiate a limit");
          }
          return t;
        } else if constexpr (std::is_same_v<N, TApply>) {
          if (std::holds_alternative<TBinder>(n.fn->node)) return differentiate(beta_reduce(t), x);
          if (occurs_free(x, n.fn)) throw UnsupportedOperator("cannot differentiate " + to_sexpr(t));
          return mul(mk::apply(un(TermUnOp::Deriv, n.fn), n.arg), differentiate(n.arg, x));
        } else {
          throw UnsupportedOperator("cannot differentiate " + to_sexpr(t));
        }
      },
      t->node);
}

// ---- numeric evaluation ---------------------------------------------------------

std::optional<double> evaluate(const TermPtr& t, const std::map<std::string, double>& env) {
  auto ok = [](double v) -> std::optional<double> {
    if (!std::isfinite(v)) return std::nullopt;
    return v;
  };
  return std::visit(
      [&](const auto& n) -> std::optional<double> {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TNum>) {
          return static_cast<double>(n.value);
        } else if constexpr (std::is_same_v<N, TConst>) {
          if (n.name == "e") return std::exp(1.0);
          if (n.name == "pi") return std::acos(-1.0);
          return std::nullopt;
        } else if constexpr (std::is_same_v<N, TVar>) {
          auto it = env.find(n.name);
          if (it == env.end()) return std::nullopt;
          return it->second;
        } else if constexpr (std::is_same_v<N, TUnOpNode>) {
          auto a = evaluate(n.arg, env);
          if (!a) return std::nullopt;
          double v = *a;
          switch (n.op) {
            case TermUnOp::Neg: return -v;
            case TermUnOp::Sin: return std::sin(v);
            case TermUnOp::Cos: return std::cos(v);
            case TermUnOp::Tan: return ok(std::tan(v));
            case TermUnOp::Ln: return v > 0 ? ok(std::log(v)) : std::nullopt;
            case TermUnOp::Exp: return ok(std::exp(v));
            case TermUnOp::Sqrt: return v >= 0 ? ok(std::sqrt(v)) : std::nullopt;
            case TermUnOp::Abs: return std::fabs(v);
            default: return std::nullopt;
          }
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          if (n.op == TermBinOp::RLim) return std::nullopt;
          auto l = evaluate(n.left, env), r = evaluate(n.right, env);
          if (!l || !r) return std::nullopt;
          switch (n.op) {
            case TermBinOp::Add: return *l + *r;
            case TermBinOp::Sub: return *l - *r;
            case TermBinOp::Mul: return *l * *r;
            case TermBinOp::Div: return *r == 0 ? std::nullopt : ok(*l / *r);
            case TermBinOp::Pow: return ok(std::pow(*l, *r));
            default: return std::nullopt;
          }
        } else if constexpr (std::is_same_v<N, TApply>) {
          if (std::holds_alternative<TBinder>(n.fn->node)) return evaluate(beta_reduce(t), env);
          return std::nullopt;
        } else {
          return std::nullopt;
        }
      },
      t->node);
}

}  // namespace naproof
