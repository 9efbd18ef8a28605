#include "naproof/ast_ops.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace naproof {

namespace {

void collect(const TermPtr& t, VarSet& bound, VarSet& out);
void collect(const PropPtr& p, VarSet& bound, VarSet& out);

void collect_bound(const std::vector<std::string>& vars, VarSet& bound,
                   const std::function<void()>& body) {
  std::vector<std::string> added;
  for (const auto& v : vars)
    if (bound.insert(v).second) added.push_back(v);
  body();
  for (const auto& v : added) bound.erase(v);
}

void collect(const TermPtr& t, VarSet& bound, VarSet& out) {
  if (!t) return;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TVar>) {
          if (!bound.count(n.name)) out.insert(n.name);
        } else if constexpr (std::is_same_v<N, TUnOpNode>) {
          collect(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          collect(n.left, bound, out);
          collect(n.right, bound, out);
        } else if constexpr (std::is_same_v<N, TApply>) {
          collect(n.fn, bound, out);
          collect(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, TBinder>) {
          collect_bound({n.var}, bound, [&] { collect(n.body, bound, out); });
        } else if constexpr (std::is_same_v<N, TInterval>) {
          collect(n.lo, bound, out);
          collect(n.hi, bound, out);
        } else if constexpr (std::is_same_v<N, TSet>) {
          collect_bound(n.vars, bound, [&] {
            collect(n.element, bound, out);
            collect(n.condition, bound, out);
          });
        }
      },
      t->node);
}

void collect(const PropPtr& p, VarSet& bound, VarSet& out) {
  if (!p) return;
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PUnPred>) {
          collect(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, PBinPred>) {
          collect(n.left, bound, out);
          collect(n.right, bound, out);
        } else if constexpr (std::is_same_v<N, PCBinPred>) {
          collect(n.left, bound, out);
          collect(n.right, bound, out);
          for (const auto& c : n.context) collect(c, bound, out);
        } else if constexpr (std::is_same_v<N, PLongOrder>) {
          for (const auto& t : n.terms) collect(t, bound, out);
        } else if constexpr (std::is_same_v<N, PUnOpNode>) {
          collect(n.arg, bound, out);
        } else if constexpr (std::is_same_v<N, PBinOpNode>) {
          collect(n.left, bound, out);
          collect(n.right, bound, out);
        } else if constexpr (std::is_same_v<N, PQuant>) {
          collect_bound({n.var}, bound, [&] { collect(n.body, bound, out); });
        }
      },
      p->node);
}

}  // namespace

VarSet free_vars(const TermPtr& t) {
  VarSet bound, out;
  collect(t, bound, out);
  return out;
}

VarSet free_vars(const PropPtr& p) {
  VarSet bound, out;
  collect(p, bound, out);
  return out;
}

VarSet free_vars(std::span<const PropPtr> ps) {
  VarSet out;
  for (const auto& p : ps) {
    VarSet bound;
    collect(p, bound, out);
  }
  return out;
}

VarSet free_vars(const ProofGoal& goal) {
  VarSet out;
  for (const auto& prem : goal.premises) {
    VarSet bound;
    collect(prem.prop, bound, out);
  }
  VarSet bound;
  collect(goal.conclusion, bound, out);
  return out;
}

bool occurs_free(const std::string& v, const TermPtr& t) { return free_vars(t).count(v) > 0; }
bool occurs_free(const std::string& v, const PropPtr& p) { return free_vars(p).count(v) > 0; }

std::string fresh_name(const std::string& base, const VarSet& avoid) {
  if (!avoid.count(base)) return base;
  std::string stem = base;
  while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
  if (stem.empty()) stem = "v";
  for (int i = 1;; ++i) {
    std::string candidate = stem + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct Substituter {
  std::string var;
  TermPtr replacement;
  VarSet repl_fv;

  // Renames a binder variable if it would capture a free variable of the replacement.
  // Returns the (possibly) new name; `avoid` collects names that must not be chosen.
  std::string pick(const std::string& bound_var, const VarSet& body_fv) const {
    if (!repl_fv.count(bound_var)) return bound_var;
    VarSet avoid = repl_fv;
    avoid.insert(body_fv.begin(), body_fv.end());
    avoid.insert(var);
    return fresh_name(bound_var, avoid);
  }

  TermPtr term(const TermPtr& t) const {
    if (!t) return t;
    return std::visit(
        [&](const auto& n) -> TermPtr {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, TVar>) {
            return n.name == var ? replacement : t;
          } else if constexpr (std::is_same_v<N, TUnOpNode>) {
            return mk::unop(n.op, term(n.arg));
          } else if constexpr (std::is_same_v<N, TBinOpNode>) {
            return mk::binop(n.op, term(n.left), term(n.right));
          } else if constexpr (std::is_same_v<N, TApply>) {
            return mk::apply(term(n.fn), term(n.arg));
          } else if constexpr (std::is_same_v<N, TBinder>) {
            if (n.var == var) return t;
            auto body_fv = free_vars(n.body);
            if (!body_fv.count(var)) return t;
            std::string nv = pick(n.var, body_fv);
            TermPtr body = n.body;
            if (nv != n.var) body = substitute(body, n.var, mk::var(nv));
            return mk::binder(n.binder, nv, term(body));
          } else if constexpr (std::is_same_v<N, TInterval>) {
            return mk::interval(n.kind, term(n.lo), term(n.hi));
          } else if constexpr (std::is_same_v<N, TSet>) {
            if (std::find(n.vars.begin(), n.vars.end(), var) != n.vars.end()) return t;
            auto fv = free_vars(t);
            if (!fv.count(var)) return t;
            VarSet inner = free_vars(n.element);
            auto cfv = free_vars(n.condition);
            inner.insert(cfv.begin(), cfv.end());
            std::vector<std::string> vars = n.vars;
            TermPtr element = n.element;
            PropPtr cond = n.condition;
            for (auto& v : vars) {
              std::string nv = pick(v, inner);
              if (nv != v) {
                element = substitute(element, v, mk::var(nv));
                cond = substitute(cond, v, mk::var(nv));
                inner.insert(nv);
                v = nv;
              }
            }
            return mk::set(std::move(vars), term(element), prop(cond));
          } else {
            return t;
          }
        },
        t->node);
  }

  PropPtr prop(const PropPtr& p) const {
    if (!p) return p;
    return std::visit(
        [&](const auto& n) -> PropPtr {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, PUnPred>) {
            return mk::unpred(n.pred, term(n.arg));
          } else if constexpr (std::is_same_v<N, PBinPred>) {
            return mk::binpred(n.pred, term(n.left), term(n.right));
          } else if constexpr (std::is_same_v<N, PCBinPred>) {
            std::vector<PropPtr> ctx;
            for (const auto& c : n.context) ctx.push_back(prop(c));
            return mk::cbinpred(n.pred, term(n.left), term(n.right), std::move(ctx));
          } else if constexpr (std::is_same_v<N, PLongOrder>) {
            std::vector<TermPtr> ts;
            for (const auto& x : n.terms) ts.push_back(term(x));
            return mk::long_order(n.orders, std::move(ts));
          } else if constexpr (std::is_same_v<N, PUnOpNode>) {
            return mk::negate(prop(n.arg));
          } else if constexpr (std::is_same_v<N, PBinOpNode>) {
            return mk::binop(n.op, prop(n.left), prop(n.right));
          } else if constexpr (std::is_same_v<N, PQuant>) {
            if (n.var == var) return p;
            auto body_fv = free_vars(n.body);
            if (!body_fv.count(var)) return p;
            std::string nv = pick(n.var, body_fv);
            PropPtr body = n.body;
            if (nv != n.var) body = substitute(body, n.var, mk::var(nv));
            return std::make_shared<const Prop>(Prop{PQuant{n.q, nv, prop(body)}});
          } else {
            return p;
          }
        },
        p->node);
  }
};

}  // namespace

TermPtr substitute(const TermPtr& target, const std::string& var, const TermPtr& replacement) {
  Substituter s{var, replacement, free_vars(replacement)};
  return s.term(target);
}

PropPtr substitute(const PropPtr& target, const std::string& var, const TermPtr& replacement) {
  Substituter s{var, replacement, free_vars(replacement)};
  return s.prop(target);
}

// ---------------------------------------------------------------------------
// Desugaring

TermPtr desugar(const TermPtr& t) {
  if (!t) return t;
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TUnOpNode>) {
          return mk::unop(n.op, desugar(n.arg));
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          return mk::binop(n.op, desugar(n.left), desugar(n.right));
        } else if constexpr (std::is_same_v<N, TApply>) {
          return mk::apply(desugar(n.fn), desugar(n.arg));
        } else if constexpr (std::is_same_v<N, TBinder>) {
          return mk::binder(n.binder, n.var, desugar(n.body));
        } else if constexpr (std::is_same_v<N, TInterval>) {
          return mk::interval(n.kind, desugar(n.lo), desugar(n.hi));
        } else if constexpr (std::is_same_v<N, TSet>) {
          return mk::set(n.vars, desugar(n.element), desugar(n.condition));
        } else {
          return t;
        }
      },
      t->node);
}

PropPtr desugar(const PropPtr& p) {
  if (!p) return p;
  return std::visit(
      [&](const auto& n) -> PropPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PUnPred>) {
          return mk::unpred(n.pred, desugar(n.arg));
        } else if constexpr (std::is_same_v<N, PBinPred>) {
          return mk::binpred(n.pred, desugar(n.left), desugar(n.right));
        } else if constexpr (std::is_same_v<N, PCBinPred>) {
          std::vector<PropPtr> ctx;
          for (const auto& c : n.context) ctx.push_back(desugar(c));
          return mk::cbinpred(n.pred, desugar(n.left), desugar(n.right), std::move(ctx));
        } else if constexpr (std::is_same_v<N, PLongOrder>) {
          std::vector<PropPtr> links;
          for (std::size_t i = 0; i < n.orders.size(); ++i)
            links.push_back(mk::binpred(n.orders[i], desugar(n.terms[i]), desugar(n.terms[i + 1])));
          return mk::conj_all(links);
        } else if constexpr (std::is_same_v<N, PUnOpNode>) {
          return mk::negate(desugar(n.arg));
        } else if constexpr (std::is_same_v<N, PBinOpNode>) {
          return mk::binop(n.op, desugar(n.left), desugar(n.right));
        } else if constexpr (std::is_same_v<N, PQuant>) {
          return std::make_shared<const Prop>(Prop{PQuant{n.q, n.var, desugar(n.body)}});
        } else {
          return p;
        }
      },
      p->node);
}

// ---------------------------------------------------------------------------
// Equality

namespace {

// Compares modulo bound-variable renaming. In structural mode bound names must match.
struct Comparer {
  bool structural = false;
  std::vector<std::string> env_a, env_b;

  static int lookup(const std::vector<std::string>& env, const std::string& name) {
    for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
      if (env[i] == name) return i;
    return -1;
  }

  bool var_eq(const std::string& a, const std::string& b) const {
    int ia = lookup(env_a, a), ib = lookup(env_b, b);
    if (ia != ib) return false;
    return ia >= 0 || a == b;
  }

  template <class F>
  bool with_bound(const std::vector<std::string>& va, const std::vector<std::string>& vb, F&& f) {
    if (va.size() != vb.size()) return false;
    if (structural && va != vb) return false;
    for (std::size_t i = 0; i < va.size(); ++i) {
      env_a.push_back(va[i]);
      env_b.push_back(vb[i]);
    }
    bool r = f();
    env_a.resize(env_a.size() - va.size());
    env_b.resize(env_b.size() - vb.size());
    return r;
  }

  bool term(const TermPtr& a, const TermPtr& b) {
    if (!a || !b) return a == b;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using N = std::decay_t<decltype(x)>;
          const auto& y = std::get<N>(b->node);
          if constexpr (std::is_same_v<N, TNum>) {
            return x.value == y.value;
          } else if constexpr (std::is_same_v<N, TInfty>) {
            return x.sign == y.sign;
          } else if constexpr (std::is_same_v<N, TConst>) {
            return x.name == y.name;
          } else if constexpr (std::is_same_v<N, TVar>) {
            return var_eq(x.name, y.name);
          } else if constexpr (std::is_same_v<N, TUnOpNode>) {
            return x.op == y.op && term(x.arg, y.arg);
          } else if constexpr (std::is_same_v<N, TBinOpNode>) {
            return x.op == y.op && term(x.left, y.left) && term(x.right, y.right);
          } else if constexpr (std::is_same_v<N, TApply>) {
            return term(x.fn, y.fn) && term(x.arg, y.arg);
          } else if constexpr (std::is_same_v<N, TBinder>) {
            return x.binder == y.binder &&
                   with_bound({x.var}, {y.var}, [&] { return term(x.body, y.body); });
          } else if constexpr (std::is_same_v<N, TInterval>) {
            return x.kind == y.kind && term(x.lo, y.lo) && term(x.hi, y.hi);
          } else if constexpr (std::is_same_v<N, TSet>) {
            return with_bound(x.vars, y.vars, [&] {
              return term(x.element, y.element) && prop(x.condition, y.condition);
            });
          }
        },
        a->node);
  }

  bool prop(PropPtr a, PropPtr b) {
    if (!a || !b) return a == b;
    if (!structural) {
      if (std::holds_alternative<PLongOrder>(a->node)) a = desugar(a);
      if (std::holds_alternative<PLongOrder>(b->node)) b = desugar(b);
    }
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using N = std::decay_t<decltype(x)>;
          const auto& y = std::get<N>(b->node);
          if constexpr (std::is_same_v<N, PUnPred>) {
            return x.pred == y.pred && term(x.arg, y.arg);
          } else if constexpr (std::is_same_v<N, PBinPred>) {
            return x.pred == y.pred && term(x.left, y.left) && term(x.right, y.right);
          } else if constexpr (std::is_same_v<N, PCBinPred>) {
            if (x.pred != y.pred || x.context.size() != y.context.size()) return false;
            if (!term(x.left, y.left) || !term(x.right, y.right)) return false;
            for (std::size_t i = 0; i < x.context.size(); ++i)
              if (!prop(x.context[i], y.context[i])) return false;
            return true;
          } else if constexpr (std::is_same_v<N, PLongOrder>) {
            if (x.orders != y.orders || x.terms.size() != y.terms.size()) return false;
            for (std::size_t i = 0; i < x.terms.size(); ++i)
              if (!term(x.terms[i], y.terms[i])) return false;
            return true;
          } else if constexpr (std::is_same_v<N, PUnOpNode>) {
            return prop(x.arg, y.arg);
          } else if constexpr (std::is_same_v<N, PBinOpNode>) {
            return x.op == y.op && prop(x.left, y.left) && prop(x.right, y.right);
          } else if constexpr (std::is_same_v<N, PQuant>) {
            return x.q == y.q &&
                   with_bound({x.var}, {y.var}, [&] { return prop(x.body, y.body); });
          } else if constexpr (std::is_same_v<N, PBool>) {
            return x.value == y.value;
          }
        },
        a->node);
  }
};

}  // namespace

bool equal(const TermPtr& a, const TermPtr& b) { return Comparer{true, {}, {}}.term(a, b); }
bool equal(const PropPtr& a, const PropPtr& b) { return Comparer{true, {}, {}}.prop(a, b); }
bool alpha_equal(const TermPtr& a, const TermPtr& b) { return Comparer{false, {}, {}}.term(a, b); }
bool alpha_equal(const PropPtr& a, const PropPtr& b) { return Comparer{false, {}, {}}.prop(a, b); }

std::vector<PropPtr> conjuncts(const PropPtr& p) {
  std::vector<PropPtr> out;
  std::function<void(const PropPtr&)> go = [&](const PropPtr& q) {
    if (auto c = as_binop(q, PropBinOp::CAnd)) {
      go(c->left);
      go(c->right);
    } else if (q && std::holds_alternative<PLongOrder>(q->node)) {
      go(desugar(q));
    } else {
      out.push_back(q);
    }
  };
  go(p);
  return out;
}

// ---------------------------------------------------------------------------
// Beta reduction

TermPtr beta_reduce(const TermPtr& t) {
  if (!t) return t;
  return std::visit(
      [&](const auto& n) -> TermPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TApply>) {
          auto fn = beta_reduce(n.fn);
          auto arg = beta_reduce(n.arg);
          if (auto lam = std::get_if<TBinder>(&fn->node);
              lam && lam->binder == Binder::LambdaB)
            return beta_reduce(substitute(lam->body, lam->var, arg));
          return mk::apply(fn, arg);
        } else if constexpr (std::is_same_v<N, TUnOpNode>) {
          return mk::unop(n.op, beta_reduce(n.arg));
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          return mk::binop(n.op, beta_reduce(n.left), beta_reduce(n.right));
        } else if constexpr (std::is_same_v<N, TBinder>) {
          return mk::binder(n.binder, n.var, beta_reduce(n.body));
        } else if constexpr (std::is_same_v<N, TInterval>) {
          return mk::interval(n.kind, beta_reduce(n.lo), beta_reduce(n.hi));
        } else if constexpr (std::is_same_v<N, TSet>) {
          return mk::set(n.vars, beta_reduce(n.element), beta_reduce(n.condition));
        } else {
          return t;
        }
      },
      t->node);
}

PropPtr beta_reduce(const PropPtr& p) {
  if (!p) return p;
  return std::visit(
      [&](const auto& n) -> PropPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PUnPred>) {
          return mk::unpred(n.pred, beta_reduce(n.arg));
        } else if constexpr (std::is_same_v<N, PBinPred>) {
          return mk::binpred(n.pred, beta_reduce(n.left), beta_reduce(n.right));
        } else if constexpr (std::is_same_v<N, PCBinPred>) {
          std::vector<PropPtr> ctx;
          for (const auto& c : n.context) ctx.push_back(beta_reduce(c));
          return mk::cbinpred(n.pred, beta_reduce(n.left), beta_reduce(n.right), std::move(ctx));
        } else if constexpr (std::is_same_v<N, PLongOrder>) {
          std::vector<TermPtr> ts;
          for (const auto& x : n.terms) ts.push_back(beta_reduce(x));
          return mk::long_order(n.orders, std::move(ts));
        } else if constexpr (std::is_same_v<N, PUnOpNode>) {
          return mk::negate(beta_reduce(n.arg));
        } else if constexpr (std::is_same_v<N, PBinOpNode>) {
          return mk::binop(n.op, beta_reduce(n.left), beta_reduce(n.right));
        } else if constexpr (std::is_same_v<N, PQuant>) {
          return std::make_shared<const Prop>(Prop{PQuant{n.q, n.var, beta_reduce(n.body)}});
        } else {
          return p;
        }
      },
      p->node);
}

int find_premise(const ProofGoal& goal, const PropPtr& p) {
  for (int i = static_cast<int>(goal.premises.size()) - 1; i >= 0; --i)
    if (alpha_equal(goal.premises[i].prop, p)) return i;
  return -1;
}

}  // namespace naproof

namespace naproof {

namespace {

struct ProofComparer {
  bool structural;

  bool term(const TermPtr& a, const TermPtr& b) const {
    return structural ? equal(a, b) : alpha_equal(a, b);
  }
  bool prop(const PropPtr& a, const PropPtr& b) const {
    return structural ? equal(a, b) : alpha_equal(a, b);
  }
  bool props(const std::vector<PropPtr>& a, const std::vector<PropPtr>& b) const {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!prop(a[i], b[i])) return false;
    return true;
  }

  static bool method(const FwdMethod& a, const FwdMethod& b) {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) {
          using N = std::decay_t<decltype(x)>;
          const auto& y = std::get<N>(b);
          if constexpr (std::is_same_v<N, FNoHint>) return true;
          else if constexpr (std::is_same_v<N, FAddEqn>) return x.labels == y.labels;
          else if constexpr (std::is_same_v<N, FDeriBothTerms>) return x.var == y.var;
          else return x.name == y.name;
        },
        a);
  }

  bool action(const Action& a, const Action& b) const {
    if (a.index() != b.index()) return false;
    return std::visit(
        [&](const auto& x) {
          using N = std::decay_t<decltype(x)>;
          const auto& y = std::get<N>(b);
          if constexpr (std::is_same_v<N, AIntros> || std::is_same_v<N, AExistVar>)
            return x.var == y.var;
          else if constexpr (std::is_same_v<N, AExists>) return term(x.witness, y.witness);
          else if constexpr (std::is_same_v<N, ASet>) return x.var == y.var && term(x.value, y.value);
          else return prop(x.prop, y.prop);
        },
        a);
  }

  bool pose(const PoseAction& a, const PoseAction& b) const {
    if (a.index() != b.index()) return false;
    if (auto x = std::get_if<APoseVar>(&a)) {
      const auto& y = std::get<APoseVar>(b);
      return x->var == y.var && props(x->assumptions, y.assumptions);
    }
    return prop(std::get<APoseProp>(a).prop, std::get<APoseProp>(b).prop);
  }

  bool proof(const ProofPtr& a, const ProofPtr& b) const {
    if (!a || !b) return !a && !b;
    if (a->node.index() != b->node.index()) return false;
    return std::visit(
        [&](const auto& x) {
          using N = std::decay_t<decltype(x)>;
          const auto& y = std::get<N>(b->node);
          if constexpr (std::is_same_v<N, ProofAction>)
            return action(x.action, y.action) && proof(x.rest, y.rest);
          else if constexpr (std::is_same_v<N, PoseWithoutProof>)
            return method(x.method, y.method) && prop(x.prop, y.prop) && proof(x.rest, y.rest);
          else if constexpr (std::is_same_v<N, PoseAndProve>)
            return method(x.method, y.method) && prop(x.prop, y.prop) &&
                   proof(x.subproof, y.subproof) && proof(x.rest, y.rest);
          else if constexpr (std::is_same_v<N, ClaimSuffice>)
            return x.method == y.method && prop(x.prop, y.prop) && proof(x.rest, y.rest);
          else if constexpr (std::is_same_v<N, ProveSuffice>)
            return x.method == y.method && prop(x.prop, y.prop) &&
                   proof(x.subproof, y.subproof) && proof(x.rest, y.rest);
          else if constexpr (std::is_same_v<N, ConclWithoutProof>)
            return method(x.method, y.method);
          else if constexpr (std::is_same_v<N, ConclAndProve>)
            return method(x.method, y.method) && proof(x.subproof, y.subproof);
          else if constexpr (std::is_same_v<N, PosePartialProof>)
            return pose(x.pose, y.pose) && proof(x.partial, y.partial) && proof(x.rest, y.rest);
          else
            return true;
        },
        a->node);
  }
};

}  // namespace

bool proof_equal(const ProofPtr& a, const ProofPtr& b, bool structural) {
  return ProofComparer{structural}.proof(a, b);
}

}  // namespace naproof

// ---------------------------------------------------------------------------
// Traversal

namespace naproof {

TermPtr map_subterms(const TermPtr& t, const std::function<TermPtr(const TermPtr&)>& f) {
  if (!t) return t;
  TermPtr rebuilt = std::visit(
      [&](const auto& n) -> TermPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TUnOpNode>) {
          return mk::unop(n.op, map_subterms(n.arg, f));
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          return mk::binop(n.op, map_subterms(n.left, f), map_subterms(n.right, f));
        } else if constexpr (std::is_same_v<N, TApply>) {
          return mk::apply(map_subterms(n.fn, f), map_subterms(n.arg, f));
        } else if constexpr (std::is_same_v<N, TBinder>) {
          return mk::binder(n.binder, n.var, map_subterms(n.body, f));
        } else if constexpr (std::is_same_v<N, TInterval>) {
          return mk::interval(n.kind, map_subterms(n.lo, f), map_subterms(n.hi, f));
        } else if constexpr (std::is_same_v<N, TSet>) {
          return mk::set(n.vars, map_subterms(n.element, f), map_terms(n.condition, f));
        } else {
          return t;
        }
      },
      t->node);
  return f(rebuilt);
}

PropPtr map_terms(const PropPtr& p, const std::function<TermPtr(const TermPtr&)>& f) {
  if (!p) return p;
  auto m = [&](const TermPtr& t) { return map_subterms(t, f); };
  return std::visit(
      [&](const auto& n) -> PropPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PUnPred>) {
          return mk::unpred(n.pred, m(n.arg));
        } else if constexpr (std::is_same_v<N, PBinPred>) {
          return mk::binpred(n.pred, m(n.left), m(n.right));
        } else if constexpr (std::is_same_v<N, PCBinPred>) {
          std::vector<PropPtr> ctx;
          for (const auto& c : n.context) ctx.push_back(map_terms(c, f));
          return mk::cbinpred(n.pred, m(n.left), m(n.right), std::move(ctx));
        } else if constexpr (std::is_same_v<N, PLongOrder>) {
          std::vector<TermPtr> ts;
          for (const auto& x : n.terms) ts.push_back(m(x));
          return mk::long_order(n.orders, std::move(ts));
        } else if constexpr (std::is_same_v<N, PUnOpNode>) {
          return mk::negate(map_terms(n.arg, f));
        } else if constexpr (std::is_same_v<N, PBinOpNode>) {
          return mk::binop(n.op, map_terms(n.left, f), map_terms(n.right, f));
        } else if constexpr (std::is_same_v<N, PQuant>) {
          auto body = map_terms(n.body, f);
          return n.q == Quantifier::Forall ? mk::forall(n.var, body) : mk::exists(n.var, body);
        } else {
          return p;
        }
      },
      p->node);
}

bool any_subterm(const TermPtr& t, const std::function<bool(const TermPtr&)>& pred) {
  if (!t) return false;
  if (pred(t)) return true;
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TUnOpNode>) {
          return any_subterm(n.arg, pred);
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          return any_subterm(n.left, pred) || any_subterm(n.right, pred);
        } else if constexpr (std::is_same_v<N, TApply>) {
          return any_subterm(n.fn, pred) || any_subterm(n.arg, pred);
        } else if constexpr (std::is_same_v<N, TBinder>) {
          return any_subterm(n.body, pred);
        } else if constexpr (std::is_same_v<N, TInterval>) {
          return any_subterm(n.lo, pred) || any_subterm(n.hi, pred);
        } else if constexpr (std::is_same_v<N, TSet>) {
          return any_subterm(n.element, pred) || any_subterm(n.condition, pred);
        } else {
          return false;
        }
      },
      t->node);
}

bool any_subterm(const PropPtr& p, const std::function<bool(const TermPtr&)>& pred) {
  if (!p) return false;
  return std::visit(
      [&](const auto& n) -> bool {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PUnPred>) {
          return any_subterm(n.arg, pred);
        } else if constexpr (std::is_same_v<N, PBinPred>) {
          return any_subterm(n.left, pred) || any_subterm(n.right, pred);
        } else if constexpr (std::is_same_v<N, PCBinPred>) {
          if (any_subterm(n.left, pred) || any_subterm(n.right, pred)) return true;
          for (const auto& c : n.context)
            if (any_subterm(c, pred)) return true;
          return false;
        } else if constexpr (std::is_same_v<N, PLongOrder>) {
          for (const auto& x : n.terms)
            if (any_subterm(x, pred)) return true;
          return false;
        } else if constexpr (std::is_same_v<N, PUnOpNode>) {
          return any_subterm(n.arg, pred);
        } else if constexpr (std::is_same_v<N, PBinOpNode>) {
          return any_subterm(n.left, pred) || any_subterm(n.right, pred);
        } else if constexpr (std::is_same_v<N, PQuant>) {
          return any_subterm(n.body, pred);
        } else {
          return false;
        }
      },
      p->node);
}

}  // namespace naproof
