#include "naproof/printer.hpp"

#include <sstream>

namespace naproof {

namespace {

using boost::multiprecision::cpp_int;

// Term contexts, loosest first.
enum Level { kSum = 0, kProduct = 1, kFactor = 2, kPower = 3, kAtom = 4 };

std::string number(const Rational& v) {
  Rational a = v < 0 ? Rational(-v) : v;
  cpp_int num = boost::multiprecision::numerator(a);
  cpp_int den = boost::multiprecision::denominator(a);
  std::string body;
  if (den == 1) {
    body = num.str();
  } else {
    cpp_int d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) d /= 2, ++twos;
    while (d % 5 == 0) d /= 5, ++fives;
    if (d == 1) {
      int k = std::max(twos, fives);
      cpp_int scale = 1;
      for (int i = 0; i < k; ++i) scale *= 10;
      std::string digits = cpp_int(num * (scale / den)).str();
      if (static_cast<int>(digits.size()) <= k) digits.insert(0, k + 1 - digits.size(), '0');
      body = digits.substr(0, digits.size() - k) + "." + digits.substr(digits.size() - k);
    } else {
      body = "(" + num.str() + "/" + den.str() + ")";
    }
  }
  return v < 0 ? "(-" + body + ")" : body;
}

std::string paren(const std::string& s, bool wrap) { return wrap ? "(" + s + ")" : s; }

std::string fn_name(TermUnOp op) {
  switch (op) {
    case TermUnOp::Sin: return "sin";
    case TermUnOp::Cos: return "cos";
    case TermUnOp::Tan: return "tan";
    case TermUnOp::Ln: return "ln";
    case TermUnOp::Exp: return "exp";
    case TermUnOp::Sqrt: return "sqrt";
    case TermUnOp::Abs: return "abs";
    default: return "";
  }
}

bool subscript_style(const TApply& a) {
  auto f = as_var(a.fn);
  if (!f || f->name == "f" || f->name == "g" || f->name == "h") return false;
  if (as_var(a.arg)) return true;
  auto n = as_num(a.arg);
  return n && n->value >= 0 && boost::multiprecision::denominator(n->value) == 1;
}

std::string term(const TermPtr& t, int ctx);
std::string prop(const PropPtr& p, int ctx);

std::string term(const TermPtr& t, int ctx) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TNum>) {
          return number(n.value);
        } else if constexpr (std::is_same_v<N, TInfty>) {
          return n.sign == InftySign::Positive ? "inf" : paren("-inf", ctx > kFactor);
        } else if constexpr (std::is_same_v<N, TConst>) {
          return n.name;
        } else if constexpr (std::is_same_v<N, TVar>) {
          return n.name;
        } else if constexpr (std::is_same_v<N, TUnOpNode>) {
          switch (n.op) {
            case TermUnOp::Neg: {
              bool bare = as_num(n.arg) || std::holds_alternative<TInfty>(n.arg->node);
              std::string inner = bare ? "(" + term(n.arg, kSum) + ")" : term(n.arg, kFactor);
              return paren("-" + inner, ctx > kFactor);
            }
            case TermUnOp::Sup:
              return "sup " + term(n.arg, kAtom);
            case TermUnOp::Infimum:
              return "infimum " + term(n.arg, kAtom);
            case TermUnOp::Deriv:
              return term(n.arg, kAtom) + "'";
            default:
              return fn_name(n.op) + "(" + term(n.arg, kSum) + ")";
          }
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          switch (n.op) {
            case TermBinOp::Add:
              return paren(term(n.left, kSum) + " + " + term(n.right, kProduct), ctx > kSum);
            case TermBinOp::Sub:
              return paren(term(n.left, kSum) + " - " + term(n.right, kProduct), ctx > kSum);
            case TermBinOp::Mul:
              return paren(term(n.left, kFactor) + " * " + term(n.right, kFactor),
                           ctx > kProduct);
            case TermBinOp::Div:
              return paren(term(n.left, kFactor) + " / " + term(n.right, kFactor),
                           ctx > kProduct);
            case TermBinOp::Pow:
              return paren(term(n.left, kAtom) + "^" + term(n.right, kFactor), ctx > kPower);
            case TermBinOp::RLim: {
              // The body extends to the right, so a limit is bracketed everywhere but the
              // loosest position.
              auto lam = std::get_if<TBinder>(&n.right->node);
              std::string v = lam ? lam->var : "x";
              std::string body = lam ? term(lam->body, kProduct)
                                     : term(n.right, kAtom) + "(" + v + ")";
              return paren("lim_{" + v + " -> " + term(n.left, kSum) + "} " + body, ctx > kSum);
            }
          }
          return "?";
        } else if constexpr (std::is_same_v<N, TApply>) {
          auto u = std::get_if<TUnOpNode>(&n.fn->node);
          if (u && u->op == TermUnOp::Deriv) {
            auto lam = std::get_if<TBinder>(&u->arg->node);
            auto x = as_var(n.arg);
            if (lam && lam->binder == Binder::LambdaB && x && x->name == lam->var)
              return "d/d" + lam->var + " (" + term(lam->body, kSum) + ")";
          }
          if (subscript_style(n)) return term(n.fn, kAtom) + "_" + term(n.arg, kAtom);
          return term(n.fn, kAtom) + "(" + term(n.arg, kSum) + ")";
        } else if constexpr (std::is_same_v<N, TBinder>) {
          return "(fun " + n.var + " -> " + term(n.body, kSum) + ")";
        } else if constexpr (std::is_same_v<N, TInterval>) {
          bool lo_open = n.kind == IntervalKind::Open || n.kind == IntervalKind::LeftOpen;
          bool hi_open = n.kind == IntervalKind::Open || n.kind == IntervalKind::RightOpen;
          return std::string(lo_open ? "(" : "[") + term(n.lo, kSum) + ", " + term(n.hi, kSum) +
                 (hi_open ? ")" : "]");
        } else {
          if (n.vars.empty() && is_true(n.condition)) return "{" + term(n.element, kSum) + "}";
          auto v = as_var(n.element);
          if (n.vars.size() == 1 && v && v->name == n.vars[0])
            return "{" + v->name + " | " + prop(n.condition, 0) + "}";
          std::string vs;
          for (std::size_t i = 0; i < n.vars.size(); ++i) vs += (i ? ", " : "") + n.vars[i];
          return "{" + term(n.element, kSum) + " | " + vs + " : " + prop(n.condition, 0) + "}";
        }
      },
      t->node);
}

std::string relation(BinPred p) {
  switch (p) {
    case BinPred::REq: return "=";
    case BinPred::RNe: return "!=";
    case BinPred::RLt: return "<";
    case BinPred::RGt: return ">";
    case BinPred::RLe: return "<=";
    case BinPred::RGe: return ">=";
    case BinPred::In: return "in";
    case BinPred::IsSubseq: return "is a subsequence of";
    case BinPred::UpperBoundOf: return "is an upper bound of";
    case BinPred::LowerBoundOf: return "is a lower bound of";
    case BinPred::ContinuousAt: return "is continuous at";
  }
  return "?";
}

std::string predicate(UnPred p) {
  switch (p) {
    case UnPred::MonotonicIncreasing: return "is monotonically increasing";
    case UnPred::MonotonicDecreasing: return "is monotonically decreasing";
    case UnPred::UpperBounded: return "is bounded above";
    case UnPred::LowerBounded: return "is bounded below";
    case UnPred::Bounded: return "is bounded";
    case UnPred::Convergent: return "is convergent";
    case UnPred::Continuous: return "is continuous";
  }
  return "?";
}

// Proposition contexts: 0 open, 1 iff operand, 2 implication, 3 or, 4 and, 5 atom.
std::string prop(const PropPtr& p, int ctx) {
  return std::visit(
      [&](const auto& n) -> std::string {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PUnPred>) {
          return term(n.arg, kSum) + " " + predicate(n.pred);
        } else if constexpr (std::is_same_v<N, PBinPred>) {
          return term(n.left, kSum) + " " + relation(n.pred) + " " + term(n.right, kSum);
        } else if constexpr (std::is_same_v<N, PCBinPred>) {
          std::string ctxs;
          for (std::size_t i = 0; i < n.context.size(); ++i)
            ctxs += (i ? "; " : "") + prop(n.context[i], 0);
          return term(n.left, kSum) + " " + relation(n.pred) + " " + term(n.right, kSum) +
                 " under (" + ctxs + ")";
        } else if constexpr (std::is_same_v<N, PLongOrder>) {
          std::string s = term(n.terms[0], kSum);
          for (std::size_t i = 0; i < n.orders.size(); ++i)
            s += " " + relation(n.orders[i]) + " " + term(n.terms[i + 1], kSum);
          return s;
        } else if constexpr (std::is_same_v<N, PUnOpNode>) {
          return "not " + prop(n.arg, 5);
        } else if constexpr (std::is_same_v<N, PBinOpNode>) {
          switch (n.op) {
            case PropBinOp::CIff:
              return paren(prop(n.left, 2) + " iff " + prop(n.right, 2), ctx > 1);
            case PropBinOp::CImply:
              return paren(prop(n.left, 3) + " implies " + prop(n.right, 2), ctx > 2);
            case PropBinOp::COr:
              return paren(prop(n.left, 4) + " or " + prop(n.right, 3), ctx > 3);
            case PropBinOp::CAnd:
              return paren(prop(n.left, 5) + " and " + prop(n.right, 4), ctx > 4);
          }
          return "?";
        } else if constexpr (std::is_same_v<N, PQuant>) {
          std::string s = n.q == Quantifier::Forall
                              ? "for every " + n.var + ", " + prop(n.body, 0)
                              : "there exists " + n.var + " such that " + prop(n.body, 0);
          return paren(s, ctx > 0);
        } else {
          return n.value ? "true" : "false";
        }
      },
      p->node);
}

std::string labels(const std::vector<std::string>& ls) {
  std::string s;
  for (const auto& l : ls) s += (s.empty() ? "(" : " (") + l + ")";
  return s;
}

std::string since(const FwdMethod& m) {
  return std::visit(
      [](const auto& x) -> std::string {
        using N = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<N, FNoHint>) return "";
        else if constexpr (std::is_same_v<N, FDefinition>) return "By definition " + x.name;
        else if constexpr (std::is_same_v<N, FTheorem>) return "By theorem " + x.name;
        else if constexpr (std::is_same_v<N, FAddEqn>) return "By adding " + labels(x.labels);
        else return "By taking the derivative of " + x.var + " on both sides";
      },
      m);
}

bool is_knowledge(const FwdMethod& m) {
  return std::holds_alternative<FDefinition>(m) || std::holds_alternative<FTheorem>(m);
}

std::string knowledge(const FwdMethod& m) {
  if (auto d = std::get_if<FDefinition>(&m)) return "definition " + d->name;
  return "theorem " + std::get<FTheorem>(m).name;
}

class ProofPrinter {
 public:
  std::ostringstream os;

  void chain(const ProofPtr& p, int indent) {
    for (auto q = p; q; q = rest_of(*q)) {
      os << std::string(indent, ' ');
      if (q->explicit_label) os << "(" << q->label << ") ";
      statement(*q, indent);
      os << "\n";
    }
  }

 private:
  void block(const ProofPtr& sub, int indent) {
    os << " {\n";
    chain(sub, indent + 2);
    os << std::string(indent, ' ') << "}";
  }

  void statement(const ProofNode& node, int indent) {
    std::visit(
        [&](const auto& n) {
          using N = std::decay_t<decltype(n)>;
          if constexpr (std::is_same_v<N, ProofAction>) {
            std::visit(
                [&](const auto& a) {
                  using A = std::decay_t<decltype(a)>;
                  if constexpr (std::is_same_v<A, AIntros>) os << "Let " << a.var;
                  else if constexpr (std::is_same_v<A, AExists>)
                    os << "There exists " << term(a.witness, kSum);
                  else if constexpr (std::is_same_v<A, ASuppose>) os << "Suppose " << prop(a.prop, 0);
                  else if constexpr (std::is_same_v<A, ASet>)
                    os << "Set " << a.var << " = " << term(a.value, kSum);
                  else if constexpr (std::is_same_v<A, ASetProp>)
                    os << "Introduce " << prop(a.prop, 0);
                  else os << "Obtain " << a.var;
                },
                n.action);
          } else if constexpr (std::is_same_v<N, PoseWithoutProof>) {
            pose(n.method, n.prop);
          } else if constexpr (std::is_same_v<N, PoseAndProve>) {
            if (std::holds_alternative<FNoHint>(n.method))
              os << "The following proves " << prop(n.prop, 0);
            else if (is_knowledge(n.method))
              os << "We use " << knowledge(n.method) << " to show that " << prop(n.prop, 0);
            else
              pose(n.method, n.prop);
            block(n.subproof, indent);
          } else if constexpr (std::is_same_v<N, ClaimSuffice>) {
            os << suffice(n.method) << prop(n.prop, 0);
          } else if constexpr (std::is_same_v<N, ProveSuffice>) {
            os << suffice(n.method) << prop(n.prop, 0);
            block(n.subproof, indent);
          } else if constexpr (std::is_same_v<N, ConclWithoutProof>) {
            conclude(n.method);
          } else if constexpr (std::is_same_v<N, ConclAndProve>) {
            conclude(n.method);
            block(n.subproof, indent);
          } else if constexpr (std::is_same_v<N, PosePartialProof>) {
            if (auto v = std::get_if<APoseVar>(&n.pose)) {
              os << "For every " << v->var;
              std::size_t first = 0;
              if (!v->assumptions.empty()) {
                auto r = as_binpred(v->assumptions[0]);
                auto lhs = r ? as_var(r->left) : nullptr;
                if (lhs && lhs->name == v->var &&
                    (is_order(r->pred) || r->pred == BinPred::In)) {
                  os << " " << relation(r->pred) << " " << term(r->right, kSum);
                  first = 1;
                }
              }
              for (std::size_t i = first; i < v->assumptions.size(); ++i)
                os << (i == first ? " such that " : " and ") << prop(v->assumptions[i], 5);
            } else {
              os << "Suppose " << prop(std::get<APoseProp>(n.pose).prop, 0);
            }
            block(n.partial, indent);
          } else {
            os << "This ends the partial proof.";
          }
        },
        node.node);
  }

  void pose(const FwdMethod& m, const PropPtr& p) {
    auto s = since(m);
    if (s.empty()) os << "We have " << prop(p, 0);
    else os << s << ", we have " << prop(p, 0);
  }

  void conclude(const FwdMethod& m) {
    auto s = since(m);
    if (!s.empty()) os << s << ", ";
    os << "which proves the proposition.";
  }

  static std::string suffice(BwdMethod m) {
    return m == BwdMethod::BContra ? "Assume for contradiction " : "It suffices to prove ";
  }
};

}  // namespace

std::string pretty_print(const TermPtr& t) { return term(t, kSum); }
std::string pretty_print(const PropPtr& p) { return p ? prop(p, 0) : "?"; }

std::string pretty_print(const ProofPtr& p) {
  ProofPrinter pp;
  pp.chain(p, 0);
  auto s = pp.os.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

std::string pretty_print(const FwdMethod& m) {
  auto s = since(m);
  return s.empty() ? "no hint" : s.substr(3);
}

std::string pretty_print(const ProofGoal& g) {
  std::string s;
  for (const auto& prem : g.premises) s += prem.label + ": " + prop(prem.prop, 0) + "\n";
  return s + "⊢ " + (g.conclusion ? prop(g.conclusion, 0) : "?");
}

}  // namespace naproof
