#include "naproof/analyzer.hpp"

#include "naproof/printer.hpp"

#include <algorithm>

namespace naproof {

bool ScopeEnv::bound(const std::string& v) const {
  if (goal_vars.count(v)) return true;
  return std::any_of(bound_vars.begin(), bound_vars.end(),
                     [&](const auto& b) { return b.first == v; });
}

ScopeEnv ScopeEnv::with(const std::string& v, Span site) const {
  ScopeEnv e = *this;
  e.bound_vars.emplace_back(v, site);
  return e;
}

ProofGoal build_initial_goal(const PropPtr& statement) { return ProofGoal{{}, statement}; }

VarSet proof_free_vars(const ProofPtr& p) {
  VarSet out;
  if (!p) return out;
  auto add = [&](const VarSet& s) { out.insert(s.begin(), s.end()); };
  auto add_except = [&](VarSet s, const std::string& v) {
    s.erase(v);
    add(s);
  };
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ProofAction>) {
          auto rest = proof_free_vars(n.rest);
          std::visit(
              [&](const auto& a) {
                using A = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<A, AIntros> || std::is_same_v<A, AExistVar>) {
                  add_except(rest, a.var);
                } else if constexpr (std::is_same_v<A, AExists>) {
                  add(free_vars(a.witness));
                  add(rest);
                } else if constexpr (std::is_same_v<A, ASet>) {
                  add(free_vars(a.value));
                  add_except(rest, a.var);
                } else {
                  add(free_vars(a.prop));
                  add(rest);
                }
              },
              n.action);
        } else if constexpr (std::is_same_v<N, PoseWithoutProof> ||
                             std::is_same_v<N, ClaimSuffice>) {
          add(free_vars(n.prop));
          add(proof_free_vars(n.rest));
        } else if constexpr (std::is_same_v<N, PoseAndProve> || std::is_same_v<N, ProveSuffice>) {
          add(free_vars(n.prop));
          add(proof_free_vars(n.subproof));
          add(proof_free_vars(n.rest));
        } else if constexpr (std::is_same_v<N, ConclAndProve>) {
          add(proof_free_vars(n.subproof));
        } else if constexpr (std::is_same_v<N, PosePartialProof>) {
          if (auto v = std::get_if<APoseVar>(&n.pose)) {
            VarSet inner = proof_free_vars(n.partial);
            add(free_vars(std::span<const PropPtr>(v->assumptions)));
            out.erase(v->var);
            add_except(inner, v->var);
          } else {
            add(free_vars(std::get<APoseProp>(n.pose).prop));
            add(proof_free_vars(n.partial));
          }
          add(proof_free_vars(n.rest));
        }
      },
      p->node);
  return out;
}

namespace {

ProofPtr copy_with(const ProofPtr& p, decltype(ProofNode::node) n) {
  auto c = std::make_shared<ProofNode>(*p);
  c->node = std::move(n);
  return c;
}

bool starts_with_exist_var(const ProofPtr& p, const std::string& v) {
  if (!p) return false;
  auto a = std::get_if<ProofAction>(&p->node);
  if (!a) return false;
  auto e = std::get_if<AExistVar>(&a->action);
  return e && e->var == v;
}

// Name of the existential variable posed by a statement, when the statement needs one.
const PQuant* posed_exists(const ProofNode& node) {
  if (auto n = std::get_if<PoseWithoutProof>(&node.node)) return as_quant(n->prop, Quantifier::Exists);
  if (auto n = std::get_if<PoseAndProve>(&node.node)) return as_quant(n->prop, Quantifier::Exists);
  return nullptr;
}

// ---- HON ----------------------------------------------------------------------

class Hon {
 public:
  Hon(const ScopeEnv& env, std::vector<AnalysisNote>* notes, Span span)
      : env_(env), notes_(notes), span_(span) {}

  TermPtr term(const TermPtr& t, const VarSet& locals) {
    return std::visit(
        [&](const auto& n) -> TermPtr {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, TUnOpNode>) {
            auto a = term(n.arg, locals);
            return a == n.arg ? t : mk::unop(n.op, a);
          } else if constexpr (std::is_same_v<N, TBinOpNode>) {
            auto l = term(n.left, locals), r = term(n.right, locals);
            return l == n.left && r == n.right ? t : mk::binop(n.op, l, r);
          } else if constexpr (std::is_same_v<N, TApply>) {
            auto f = term(n.fn, locals), a = term(n.arg, locals);
            return f == n.fn && a == n.arg ? t : mk::apply(f, a);
          } else if constexpr (std::is_same_v<N, TBinder>) {
            auto b = term(n.body, with(locals, n.var));
            return b == n.body ? t : mk::binder(n.binder, n.var, b);
          } else if constexpr (std::is_same_v<N, TInterval>) {
            auto lo = term(n.lo, locals), hi = term(n.hi, locals);
            return lo == n.lo && hi == n.hi ? t : mk::interval(n.kind, lo, hi);
          } else if constexpr (std::is_same_v<N, TSet>) {
            if (n.vars.empty() && is_true(n.condition)) {
              if (auto app = std::get_if<TApply>(&n.element->node)) {
                auto idx = as_var(app->arg);
                if (idx && !bound(idx->name, locals)) {
                  note("hon-range-set", "{" + pretty_print(n.element) + "} read as the set of all " +
                                            "elements of the sequence");
                  auto elem = term(n.element, with(locals, idx->name));
                  return mk::set({idx->name}, elem, n.condition);
                }
              }
            }
            VarSet inner = locals;
            inner.insert(n.vars.begin(), n.vars.end());
            auto e = term(n.element, inner);
            auto c = prop(n.condition, inner);
            return e == n.element && c == n.condition ? t : mk::set(n.vars, e, c);
          } else {
            return t;
          }
        },
        t->node);
  }

  PropPtr prop(const PropPtr& p, const VarSet& locals) {
    return std::visit(
        [&](const auto& n) -> PropPtr {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, PUnPred>) {
            auto a = term(n.arg, locals);
            return a == n.arg ? p : mk::unpred(n.pred, a);
          } else if constexpr (std::is_same_v<N, PBinPred>) {
            if (n.pred == BinPred::REq) {
              if (auto rewritten = lambda_rewrite(n, locals)) return rewritten;
            }
            auto l = term(n.left, locals), r = term(n.right, locals);
            return l == n.left && r == n.right ? p : mk::binpred(n.pred, l, r);
          } else if constexpr (std::is_same_v<N, PCBinPred>) {
            auto l = term(n.left, locals), r = term(n.right, locals);
            return l == n.left && r == n.right ? p : mk::cbinpred(n.pred, l, r, n.context);
          } else if constexpr (std::is_same_v<N, PLongOrder>) {
            std::vector<TermPtr> ts;
            bool same = true;
            for (const auto& x : n.terms) {
              ts.push_back(term(x, locals));
              same = same && ts.back() == x;
            }
            return same ? p : mk::long_order(n.orders, ts);
          } else if constexpr (std::is_same_v<N, PUnOpNode>) {
            auto a = prop(n.arg, locals);
            return a == n.arg ? p : mk::negate(a);
          } else if constexpr (std::is_same_v<N, PBinOpNode>) {
            auto l = prop(n.left, locals), r = prop(n.right, locals);
            return l == n.left && r == n.right ? p : mk::binop(n.op, l, r);
          } else if constexpr (std::is_same_v<N, PQuant>) {
            auto b = prop(n.body, with(locals, n.var));
            if (b == n.body) return p;
            return n.q == Quantifier::Forall ? mk::forall(n.var, b) : mk::exists(n.var, b);
          } else {
            return p;
          }
        },
        p->node);
  }

  void set_span(Span s) { span_ = s; }

 private:
  const ScopeEnv& env_;
  std::vector<AnalysisNote>* notes_;
  Span span_;

  static VarSet with(VarSet s, const std::string& v) {
    s.insert(v);
    return s;
  }

  bool bound(const std::string& v, const VarSet& locals) const {
    return locals.count(v) || env_.bound(v);
  }

  void note(const std::string& kind, const std::string& text) {
    if (notes_) notes_->push_back({span_, kind, text});
  }

  // f(x) = t, or f'(x) = t, with x unbound: the equation defines the function.
  PropPtr lambda_rewrite(const PBinPred& eq, const VarSet& locals) {
    auto app = std::get_if<TApply>(&eq.left->node);
    if (!app) return nullptr;
    auto x = as_var(app->arg);
    if (!x || bound(x->name, locals)) return nullptr;
    const TermPtr& fn = app->fn;
    bool function_like = as_var(fn) != nullptr;
    if (auto u = std::get_if<TUnOpNode>(&fn->node))
      function_like = u->op == TermUnOp::Deriv && as_var(u->arg);
    if (!function_like || occurs_free(x->name, fn)) return nullptr;
    note("hon-lambda", pretty_print(eq.left) + " = ... read as a definition of " +
                           pretty_print(fn) + " as a function of " + x->name);
    auto body = term(eq.right, with(locals, x->name));
    return mk::eq(fn, mk::lambda(x->name, body));
  }
};

ScopeEnv extend(const ScopeEnv& env, const VarSet& vs, Span site) {
  ScopeEnv e = env;
  for (const auto& v : vs)
    if (!e.bound(v)) e.bound_vars.emplace_back(v, site);
  return e;
}

ProofPtr hon_proof(const ProofPtr& p, const ScopeEnv& env, std::vector<AnalysisNote>* notes);

PropPtr hon_prop(const PropPtr& p, const ScopeEnv& env, std::vector<AnalysisNote>* notes,
                 Span span) {
  Hon h(env, notes, span);
  return h.prop(p, {});
}

TermPtr hon_term(const TermPtr& t, const ScopeEnv& env, std::vector<AnalysisNote>* notes,
                 Span span) {
  Hon h(env, notes, span);
  return h.term(t, {});
}

// Continuation scope after a statement posing `∃x. P`: x is usable if the text uses it.
ScopeEnv after_pose(const PropPtr& prop, const ProofPtr& rest, const ScopeEnv& env, Span span) {
  auto q = as_quant(prop, Quantifier::Exists);
  if (q && proof_free_vars(rest).count(q->var)) return env.with(q->var, span);
  return env;
}

ProofPtr hon_proof(const ProofPtr& p, const ScopeEnv& env, std::vector<AnalysisNote>* notes) {
  if (!p) return p;
  const Span span = p->span;
  auto P = [&](const PropPtr& x, const ScopeEnv& e) { return hon_prop(x, e, notes, span); };
  return std::visit(
      [&](const auto& n) -> ProofPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ProofAction>) {
          ScopeEnv next = env;
          Action act = std::visit(
              [&](const auto& a) -> Action {
                using A = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<A, AIntros> || std::is_same_v<A, AExistVar>) {
                  next = env.with(a.var, span);
                  return a;
                } else if constexpr (std::is_same_v<A, AExists>) {
                  return AExists{hon_term(a.witness, env, notes, span)};
                } else if constexpr (std::is_same_v<A, ASet>) {
                  next = env.with(a.var, span);
                  return ASet{a.var, hon_term(a.value, env, notes, span)};
                } else if constexpr (std::is_same_v<A, ASetProp>) {
                  auto q = P(a.prop, env);
                  next = extend(env, free_vars(q), span);
                  return ASetProp{q};
                } else {
                  return ASuppose{P(a.prop, env)};
                }
              },
              n.action);
          return copy_with(p, ProofAction{act, hon_proof(n.rest, next, notes)});
        } else if constexpr (std::is_same_v<N, PoseWithoutProof>) {
          auto q = P(n.prop, env);
          auto next = after_pose(q, n.rest, env, span);
          return copy_with(p, PoseWithoutProof{n.method, q, hon_proof(n.rest, next, notes)});
        } else if constexpr (std::is_same_v<N, PoseAndProve>) {
          auto q = P(n.prop, env);
          auto sub = hon_proof(n.subproof, env, notes);
          auto next = after_pose(q, n.rest, env, span);
          return copy_with(p, PoseAndProve{n.method, q, sub, hon_proof(n.rest, next, notes)});
        } else if constexpr (std::is_same_v<N, ClaimSuffice>) {
          return copy_with(p, ClaimSuffice{n.method, P(n.prop, env), hon_proof(n.rest, env, notes)});
        } else if constexpr (std::is_same_v<N, ProveSuffice>) {
          auto q = P(n.prop, env);
          auto sub = hon_proof(n.subproof, env, notes);
          return copy_with(p, ProveSuffice{n.method, q, sub, hon_proof(n.rest, env, notes)});
        } else if constexpr (std::is_same_v<N, ConclAndProve>) {
          return copy_with(p, ConclAndProve{n.method, hon_proof(n.subproof, env, notes)});
        } else if constexpr (std::is_same_v<N, PosePartialProof>) {
          if (auto v = std::get_if<APoseVar>(&n.pose)) {
            auto inner = env.with(v->var, span);
            APoseVar pv{v->var, {}};
            for (const auto& a : v->assumptions) pv.assumptions.push_back(P(a, inner));
            auto partial = hon_proof(n.partial, inner, notes);
            return copy_with(p, PosePartialProof{pv, partial, hon_proof(n.rest, env, notes)});
          }
          auto q = P(std::get<APoseProp>(n.pose).prop, env);
          auto partial = hon_proof(n.partial, env, notes);
          return copy_with(p, PosePartialProof{APoseProp{q}, partial, hon_proof(n.rest, env, notes)});
        } else {
          return p;
        }
      },
      p->node);
}

}  // namespace

PropPtr hon(const PropPtr& p, const ScopeEnv& env, std::vector<AnalysisNote>* notes, Span span) {
  return hon_prop(p, env, notes, span);
}

ProofPtr hon(const ProofPtr& p, const ScopeEnv& env, std::vector<AnalysisNote>* notes) {
  return hon_proof(p, env, notes);
}

ProofPtr hcds(const ProofPtr& p, std::vector<AnalysisNote>* notes) {
  if (!p) return p;
  ProofPtr out = std::visit(
      [&](const auto& n) -> ProofPtr {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ProofAction>) {
          return copy_with(p, ProofAction{n.action, hcds(n.rest, notes)});
        } else if constexpr (std::is_same_v<N, PoseWithoutProof>) {
          return copy_with(p, PoseWithoutProof{n.method, n.prop, hcds(n.rest, notes)});
        } else if constexpr (std::is_same_v<N, PoseAndProve>) {
          auto sub = hcds(n.subproof, notes);
          return copy_with(p, PoseAndProve{n.method, n.prop, sub, hcds(n.rest, notes)});
        } else if constexpr (std::is_same_v<N, ClaimSuffice>) {
          return copy_with(p, ClaimSuffice{n.method, n.prop, hcds(n.rest, notes)});
        } else if constexpr (std::is_same_v<N, ProveSuffice>) {
          auto sub = hcds(n.subproof, notes);
          return copy_with(p, ProveSuffice{n.method, n.prop, sub, hcds(n.rest, notes)});
        } else if constexpr (std::is_same_v<N, ConclAndProve>) {
          return copy_with(p, ConclAndProve{n.method, hcds(n.subproof, notes)});
        } else if constexpr (std::is_same_v<N, PosePartialProof>) {
          auto partial = hcds(n.partial, notes);
          return copy_with(p, PosePartialProof{n.pose, partial, hcds(n.rest, notes)});
        } else {
          return p;
        }
      },
      p->node);

  auto q = posed_exists(*out);
  if (!q) return out;
  ProofPtr rest = rest_of(*out);
  if (starts_with_exist_var(rest, q->var) || !proof_free_vars(rest).count(q->var)) return out;
  auto inserted = mk::node(ProofAction{AExistVar{q->var}, rest}, p->span, p->label + "." + q->var);
  if (notes)
    notes->push_back({p->span, "hcds-exist-var",
                      "introduced " + q->var + " from the existential statement at step " + p->label});
  return with_rest(out, inserted);
}

AnalysisOutcome analyze(const ProofPtr& p, const PropPtr& theorem_statement) {
  AnalysisOutcome out;
  ScopeEnv empty;
  auto statement = hon_prop(theorem_statement, empty, &out.notes, Span{});
  out.initial_goal = build_initial_goal(statement);
  ScopeEnv env;
  env.goal_vars = free_vars(statement);
  auto rewritten = hon_proof(p, env, &out.notes);
  out.proof = hcds(rewritten, &out.notes);
  return out;
}

}  // namespace naproof
