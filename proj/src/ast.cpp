#include "naproof/ast.hpp"

#include <type_traits>

namespace naproof {

std::string_view name_of(InftySign s) {
  return s == InftySign::Positive ? "PositiveInfty" : "NegativeInfty";
}

std::string_view name_of(TermUnOp op) {
  switch (op) {
    case TermUnOp::Neg: return "Neg";
    case TermUnOp::Sup: return "Sup";
    case TermUnOp::Infimum: return "Infimum";
    case TermUnOp::Ln: return "Ln";
    case TermUnOp::Exp: return "Exp";
    case TermUnOp::Sqrt: return "Sqrt";
    case TermUnOp::Sin: return "Sin";
    case TermUnOp::Cos: return "Cos";
    case TermUnOp::Tan: return "Tan";
    case TermUnOp::Abs: return "Abs";
    case TermUnOp::Deriv: return "Deriv";
  }
  return "?";
}

std::string_view name_of(TermBinOp op) {
  switch (op) {
    case TermBinOp::Add: return "Add";
    case TermBinOp::Sub: return "Sub";
    case TermBinOp::Mul: return "Mul";
    case TermBinOp::Div: return "Div";
    case TermBinOp::Pow: return "Pow";
    case TermBinOp::RLim: return "RLim";
  }
  return "?";
}

std::string_view name_of(Binder b) {
  return b == Binder::SeqLimitB ? "SeqLimitB" : "LambdaB";
}

std::string_view name_of(IntervalKind k) {
  switch (k) {
    case IntervalKind::Open: return "Open";
    case IntervalKind::Closed: return "Closed";
    case IntervalKind::LeftOpen: return "LeftOpen";
    case IntervalKind::RightOpen: return "RightOpen";
  }
  return "?";
}

std::string_view name_of(UnPred p) {
  switch (p) {
    case UnPred::MonotonicIncreasing: return "MonotonicIncreasing";
    case UnPred::MonotonicDecreasing: return "MonotonicDecreasing";
    case UnPred::UpperBounded: return "UpperBounded";
    case UnPred::LowerBounded: return "LowerBounded";
    case UnPred::Bounded: return "Bounded";
    case UnPred::Convergent: return "Convergent";
    case UnPred::Continuous: return "Continuous";
  }
  return "?";
}

std::string_view name_of(BinPred p) {
  switch (p) {
    case BinPred::REq: return "REq";
    case BinPred::RNe: return "RNe";
    case BinPred::RLt: return "RLt";
    case BinPred::RGt: return "RGt";
    case BinPred::RLe: return "RLe";
    case BinPred::RGe: return "RGe";
    case BinPred::In: return "In";
    case BinPred::IsSubseq: return "IsSubseq";
    case BinPred::UpperBoundOf: return "UpperBoundOf";
    case BinPred::LowerBoundOf: return "LowerBoundOf";
    case BinPred::ContinuousAt: return "ContinuousAt";
  }
  return "?";
}

std::string_view name_of(PropUnOp) { return "CNot"; }

std::string_view name_of(PropBinOp op) {
  switch (op) {
    case PropBinOp::CAnd: return "CAnd";
    case PropBinOp::COr: return "COr";
    case PropBinOp::CImply: return "CImply";
    case PropBinOp::CIff: return "CIff";
  }
  return "?";
}

std::string_view name_of(Quantifier q) { return q == Quantifier::Forall ? "QForall" : "QExists"; }

bool is_order(BinPred p) {
  switch (p) {
    case BinPred::REq:
    case BinPred::RNe:
    case BinPred::RLt:
    case BinPred::RGt:
    case BinPred::RLe:
    case BinPred::RGe:
      return true;
    default:
      return false;
  }
}

namespace mk {

namespace {
template <class T>
TermPtr term(T&& v) {
  return std::make_shared<const Term>(Term{std::forward<T>(v)});
}
template <class T>
PropPtr prop(T&& v) {
  return std::make_shared<const Prop>(Prop{std::forward<T>(v)});
}
}  // namespace

TermPtr num(Rational v) { return term(TNum{std::move(v)}); }
TermPtr num(long long v) { return term(TNum{Rational(v)}); }
TermPtr infty(InftySign s) { return term(TInfty{s}); }
TermPtr constant(std::string name) { return term(TConst{std::move(name)}); }
TermPtr var(std::string name) { return term(TVar{std::move(name)}); }
TermPtr unop(TermUnOp op, TermPtr arg) { return term(TUnOpNode{op, std::move(arg)}); }
TermPtr binop(TermBinOp op, TermPtr l, TermPtr r) {
  return term(TBinOpNode{op, std::move(l), std::move(r)});
}
TermPtr apply(TermPtr fn, TermPtr arg) { return term(TApply{std::move(fn), std::move(arg)}); }
TermPtr binder(Binder b, std::string v, TermPtr body) {
  return term(TBinder{b, std::move(v), std::move(body)});
}
TermPtr lambda(std::string v, TermPtr body) {
  return binder(Binder::LambdaB, std::move(v), std::move(body));
}
TermPtr interval(IntervalKind k, TermPtr lo, TermPtr hi) {
  return term(TInterval{k, std::move(lo), std::move(hi)});
}
TermPtr set(std::vector<std::string> vars, TermPtr element, PropPtr cond) {
  return term(TSet{std::move(vars), std::move(element), std::move(cond)});
}
TermPtr limit(TermPtr point, std::string v, TermPtr body) {
  return binop(TermBinOp::RLim, std::move(point), lambda(std::move(v), std::move(body)));
}
TermPtr add(TermPtr l, TermPtr r) { return binop(TermBinOp::Add, std::move(l), std::move(r)); }
TermPtr sub(TermPtr l, TermPtr r) { return binop(TermBinOp::Sub, std::move(l), std::move(r)); }
TermPtr mul(TermPtr l, TermPtr r) { return binop(TermBinOp::Mul, std::move(l), std::move(r)); }
TermPtr div(TermPtr l, TermPtr r) { return binop(TermBinOp::Div, std::move(l), std::move(r)); }
TermPtr pow(TermPtr l, TermPtr r) { return binop(TermBinOp::Pow, std::move(l), std::move(r)); }
TermPtr neg(TermPtr t) { return unop(TermUnOp::Neg, std::move(t)); }

PropPtr unpred(UnPred p, TermPtr t) { return prop(PUnPred{p, std::move(t)}); }
PropPtr binpred(BinPred p, TermPtr l, TermPtr r) {
  return prop(PBinPred{p, std::move(l), std::move(r)});
}
PropPtr cbinpred(BinPred p, TermPtr l, TermPtr r, std::vector<PropPtr> ctx) {
  return prop(PCBinPred{p, std::move(l), std::move(r), std::move(ctx)});
}
PropPtr long_order(std::vector<BinPred> orders, std::vector<TermPtr> terms) {
  return prop(PLongOrder{std::move(orders), std::move(terms)});
}
PropPtr eq(TermPtr l, TermPtr r) { return binpred(BinPred::REq, std::move(l), std::move(r)); }
PropPtr lt(TermPtr l, TermPtr r) { return binpred(BinPred::RLt, std::move(l), std::move(r)); }
PropPtr gt(TermPtr l, TermPtr r) { return binpred(BinPred::RGt, std::move(l), std::move(r)); }
PropPtr le(TermPtr l, TermPtr r) { return binpred(BinPred::RLe, std::move(l), std::move(r)); }
PropPtr ge(TermPtr l, TermPtr r) { return binpred(BinPred::RGe, std::move(l), std::move(r)); }
PropPtr ne(TermPtr l, TermPtr r) { return binpred(BinPred::RNe, std::move(l), std::move(r)); }
PropPtr negate(PropPtr p) { return prop(PUnOpNode{PropUnOp::Not, std::move(p)}); }
PropPtr binop(PropBinOp op, PropPtr l, PropPtr r) {
  return prop(PBinOpNode{op, std::move(l), std::move(r)});
}
PropPtr conj(PropPtr l, PropPtr r) { return binop(PropBinOp::CAnd, std::move(l), std::move(r)); }
PropPtr disj(PropPtr l, PropPtr r) { return binop(PropBinOp::COr, std::move(l), std::move(r)); }
PropPtr implies(PropPtr l, PropPtr r) {
  return binop(PropBinOp::CImply, std::move(l), std::move(r));
}
PropPtr iff(PropPtr l, PropPtr r) { return binop(PropBinOp::CIff, std::move(l), std::move(r)); }
PropPtr forall(std::string v, PropPtr body) {
  return prop(PQuant{Quantifier::Forall, std::move(v), std::move(body)});
}
PropPtr exists(std::string v, PropPtr body) {
  return prop(PQuant{Quantifier::Exists, std::move(v), std::move(body)});
}
PropPtr truth() { return prop(PBool{true}); }
PropPtr falsity() { return prop(PBool{false}); }

PropPtr conj_all(const std::vector<PropPtr>& ps) {
  if (ps.empty()) return truth();
  PropPtr acc = ps.back();
  for (auto it = ps.rbegin() + 1; it != ps.rend(); ++it) acc = conj(*it, acc);
  return acc;
}

ProofPtr node(decltype(ProofNode::node) n, Span span, std::string label, bool explicit_label) {
  auto p = std::make_shared<ProofNode>();
  p->node = std::move(n);
  p->span = span;
  p->label = std::move(label);
  p->explicit_label = explicit_label;
  return p;
}

}  // namespace mk

ProofPtr rest_of(const ProofNode& node) {
  return std::visit(
      [](const auto& n) -> ProofPtr {
        if constexpr (requires { n.rest; }) {
          return n.rest;
        } else {
          return nullptr;
        }
      },
      node.node);
}

ProofPtr with_rest(const ProofPtr& node, ProofPtr rest) {
  if (!node) return rest;
  auto copy = std::make_shared<ProofNode>(*node);
  std::visit(
      [&](auto& n) {
        if constexpr (requires { n.rest; }) n.rest = std::move(rest);
      },
      copy->node);
  return copy;
}

const TVar* as_var(const TermPtr& t) { return t ? std::get_if<TVar>(&t->node) : nullptr; }
const TNum* as_num(const TermPtr& t) { return t ? std::get_if<TNum>(&t->node) : nullptr; }

const PBinPred* as_binpred(const PropPtr& p) {
  return p ? std::get_if<PBinPred>(&p->node) : nullptr;
}

const PBinPred* as_eq(const PropPtr& p) {
  auto b = as_binpred(p);
  return b && b->pred == BinPred::REq ? b : nullptr;
}

const PQuant* as_quant(const PropPtr& p, Quantifier q) {
  auto x = p ? std::get_if<PQuant>(&p->node) : nullptr;
  return x && x->q == q ? x : nullptr;
}

const PBinOpNode* as_binop(const PropPtr& p, PropBinOp op) {
  auto x = p ? std::get_if<PBinOpNode>(&p->node) : nullptr;
  return x && x->op == op ? x : nullptr;
}

const PUnOpNode* as_not(const PropPtr& p) { return p ? std::get_if<PUnOpNode>(&p->node) : nullptr; }

bool is_false(const PropPtr& p) {
  auto b = p ? std::get_if<PBool>(&p->node) : nullptr;
  return b && !b->value;
}

bool is_true(const PropPtr& p) {
  auto b = p ? std::get_if<PBool>(&p->node) : nullptr;
  return b && b->value;
}

}  // namespace naproof
