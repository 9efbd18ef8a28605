#include "naproof/sexpr.hpp"

#include <cctype>
#include <map>
#include <sstream>

namespace naproof {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string string_list(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += " ";
    out += quote(xs[i]);
  }
  return out + "]";
}

void write(std::ostream& os, const TermPtr& t);
void write(std::ostream& os, const PropPtr& p);

void write(std::ostream& os, const TermPtr& t) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, TNum>) {
          os << "(TNum " << n.value.str() << ")";
        } else if constexpr (std::is_same_v<N, TInfty>) {
          os << "(TInfty " << name_of(n.sign) << ")";
        } else if constexpr (std::is_same_v<N, TConst>) {
          os << "(TConst " << quote(n.name) << ")";
        } else if constexpr (std::is_same_v<N, TUnOpNode>) {
          os << "(TUnOp " << name_of(n.op) << " ";
          write(os, n.arg);
          os << ")";
        } else if constexpr (std::is_same_v<N, TBinOpNode>) {
          os << "(TBinOp " << name_of(n.op) << " ";
          write(os, n.left);
          os << " ";
          write(os, n.right);
          os << ")";
        } else if constexpr (std::is_same_v<N, TApply>) {
          os << "(TApply ";
          write(os, n.fn);
          os << " ";
          write(os, n.arg);
          os << ")";
        } else if constexpr (std::is_same_v<N, TBinder>) {
          os << "(TBinder " << name_of(n.binder) << " " << quote(n.var) << " ";
          write(os, n.body);
          os << ")";
        } else if constexpr (std::is_same_v<N, TVar>) {
          os << "(TVar " << quote(n.name) << ")";
        } else if constexpr (std::is_same_v<N, TInterval>) {
          os << "(TInterval " << name_of(n.kind) << " ";
          write(os, n.lo);
          os << " ";
          write(os, n.hi);
          os << ")";
        } else if constexpr (std::is_same_v<N, TSet>) {
          os << "(TSet " << string_list(n.vars) << " ";
          write(os, n.element);
          os << " ";
          write(os, n.condition);
          os << ")";
        }
      },
      t->node);
}

void write(std::ostream& os, const PropPtr& p) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, PUnPred>) {
          os << "(PUnPred " << name_of(n.pred) << " ";
          write(os, n.arg);
          os << ")";
        } else if constexpr (std::is_same_v<N, PBinPred>) {
          os << "(PBinPred " << name_of(n.pred) << " ";
          write(os, n.left);
          os << " ";
          write(os, n.right);
          os << ")";
        } else if constexpr (std::is_same_v<N, PCBinPred>) {
          os << "(PCBinPred " << name_of(n.pred) << " ";
          write(os, n.left);
          os << " ";
          write(os, n.right);
          os << " [";
          for (std::size_t i = 0; i < n.context.size(); ++i) {
            if (i) os << " ";
            write(os, n.context[i]);
          }
          os << "])";
        } else if constexpr (std::is_same_v<N, PLongOrder>) {
          os << "(PLongOrder [";
          for (std::size_t i = 0; i < n.orders.size(); ++i) {
            if (i) os << " ";
            os << name_of(n.orders[i]);
          }
          os << "]";
          for (const auto& t : n.terms) {
            os << " ";
            write(os, t);
          }
          os << ")";
        } else if constexpr (std::is_same_v<N, PUnOpNode>) {
          os << "(PUnOp " << name_of(n.op) << " ";
          write(os, n.arg);
          os << ")";
        } else if constexpr (std::is_same_v<N, PBinOpNode>) {
          os << "(PBinOp " << name_of(n.op) << " ";
          write(os, n.left);
          os << " ";
          write(os, n.right);
          os << ")";
        } else if constexpr (std::is_same_v<N, PQuant>) {
          os << "(PQuant " << name_of(n.q) << " " << quote(n.var) << " ";
          write(os, n.body);
          os << ")";
        } else if constexpr (std::is_same_v<N, PBool>) {
          os << (n.value ? "PTrue" : "PFalse");
        }
      },
      p->node);
}

std::string method_text(const FwdMethod& m) {
  return std::visit(
      [](const auto& x) -> std::string {
        using N = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<N, FNoHint>) return "FNoHint";
        else if constexpr (std::is_same_v<N, FDefinition>) return "(FDefinition " + x.name + ")";
        else if constexpr (std::is_same_v<N, FTheorem>) return "(FTheorem " + x.name + ")";
        else if constexpr (std::is_same_v<N, FAddEqn>) return "(FAddEqn " + string_list(x.labels) + ")";
        else return "(FDeriBothTerms " + quote(x.var) + ")";
      },
      m);
}

std::string bwd_text(BwdMethod m) { return m == BwdMethod::BNoHint ? "BNoHint" : "BContra"; }

void write_proof(std::ostream& os, const ProofPtr& p, int indent);

void newline(std::ostream& os, int indent) { os << "\n" << std::string(indent, ' '); }

void write_proof(std::ostream& os, const ProofPtr& p, int indent) {
  if (!p) {
    os << "Nil";
    return;
  }
  auto sub = [&](const ProofPtr& q) {
    newline(os, indent + 2);
    write_proof(os, q, indent + 2);
  };
  auto rest = [&](const ProofPtr& q) {
    newline(os, indent);
    write_proof(os, q, indent);
  };
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, ProofAction>) {
          os << "(ProofAction ";
          std::visit(
              [&](const auto& a) {
                using A = std::decay_t<decltype(a)>;
                if constexpr (std::is_same_v<A, AIntros>) {
                  os << "(AIntros " << quote(a.var) << ")";
                } else if constexpr (std::is_same_v<A, AExists>) {
                  os << "(AExists ";
                  write(os, a.witness);
                  os << ")";
                } else if constexpr (std::is_same_v<A, ASuppose>) {
                  os << "(ASuppose ";
                  write(os, a.prop);
                  os << ")";
                } else if constexpr (std::is_same_v<A, ASet>) {
                  os << "(ASet " << quote(a.var) << " ";
                  write(os, a.value);
                  os << ")";
                } else if constexpr (std::is_same_v<A, ASetProp>) {
                  os << "(ASetProp ";
                  write(os, a.prop);
                  os << ")";
                } else {
                  os << "(AExistVar " << quote(a.var) << ")";
                }
              },
              n.action);
          rest(n.rest);
          os << ")";
        } else if constexpr (std::is_same_v<N, PoseWithoutProof>) {
          os << "(PoseWithoutProof " << method_text(n.method) << " ";
          write(os, n.prop);
          rest(n.rest);
          os << ")";
        } else if constexpr (std::is_same_v<N, PoseAndProve>) {
          os << "(PoseAndProve " << method_text(n.method) << " ";
          write(os, n.prop);
          sub(n.subproof);
          rest(n.rest);
          os << ")";
        } else if constexpr (std::is_same_v<N, ClaimSuffice>) {
          os << "(ClaimSuffice " << bwd_text(n.method) << " ";
          write(os, n.prop);
          rest(n.rest);
          os << ")";
        } else if constexpr (std::is_same_v<N, ProveSuffice>) {
          os << "(ProveSuffice " << bwd_text(n.method) << " ";
          write(os, n.prop);
          sub(n.subproof);
          rest(n.rest);
          os << ")";
        } else if constexpr (std::is_same_v<N, ConclWithoutProof>) {
          os << "(ConclWithoutProof " << method_text(n.method) << ")";
        } else if constexpr (std::is_same_v<N, ConclAndProve>) {
          os << "(ConclAndProve " << method_text(n.method);
          sub(n.subproof);
          os << ")";
        } else if constexpr (std::is_same_v<N, PosePartialProof>) {
          os << "(PosePartialProof ";
          if (auto v = std::get_if<APoseVar>(&n.pose)) {
            os << "(APoseVar " << quote(v->var) << " [";
            for (std::size_t i = 0; i < v->assumptions.size(); ++i) {
              if (i) os << " ";
              write(os, v->assumptions[i]);
            }
            os << "])";
          } else {
            os << "(APoseProp ";
            write(os, std::get<APoseProp>(n.pose).prop);
            os << ")";
          }
          sub(n.partial);
          rest(n.rest);
          os << ")";
        } else {
          os << "EndPartialProof";
        }
      },
      p->node);
}

// ---------------------------------------------------------------------------
// Reader

struct SNode {
  enum Kind { Atom, String, List, Bracket } kind = Atom;
  std::string text;
  std::vector<SNode> items;
};

class SReader {
 public:
  explicit SReader(const std::string& s) : s_(s) {}

  SNode read() {
    skip();
    if (pos_ >= s_.size()) throw SexprError("unexpected end of input");
    char c = s_[pos_];
    if (c == '(' || c == '[') {
      ++pos_;
      SNode n;
      n.kind = c == '(' ? SNode::List : SNode::Bracket;
      char close = c == '(' ? ')' : ']';
      for (;;) {
        skip();
        if (pos_ >= s_.size()) throw SexprError("unterminated list");
        if (s_[pos_] == close) {
          ++pos_;
          return n;
        }
        n.items.push_back(read());
      }
    }
    if (c == ')' || c == ']') throw SexprError("unexpected closing bracket");
    if (c == '"') {
      ++pos_;
      SNode n;
      n.kind = SNode::String;
      while (pos_ < s_.size() && s_[pos_] != '"') {
        if (s_[pos_] == '\\' && pos_ + 1 < s_.size()) ++pos_;
        n.text += s_[pos_++];
      }
      if (pos_ >= s_.size()) throw SexprError("unterminated string");
      ++pos_;
      return n;
    }
    SNode n;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) &&
           s_[pos_] != '(' && s_[pos_] != ')' && s_[pos_] != '[' && s_[pos_] != ']' &&
           s_[pos_] != '"')
      n.text += s_[pos_++];
    return n;
  }

  void expect_end() {
    skip();
    if (pos_ != s_.size()) throw SexprError("trailing input after expression");
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  const std::string& s_;
  std::size_t pos_ = 0;
};

template <class E>
E enum_from(const std::string& s, std::initializer_list<E> values) {
  for (E v : values)
    if (name_of(v) == s) return v;
  throw SexprError("unknown constructor argument '" + s + "'");
}

const std::string& head(const SNode& n) {
  if (n.kind == SNode::Atom) return n.text;
  if (n.kind != SNode::List || n.items.empty() || n.items[0].kind != SNode::Atom)
    throw SexprError("expected constructor application");
  return n.items[0].text;
}

const SNode& arg(const SNode& n, std::size_t i) {
  if (n.kind != SNode::List || i + 1 >= n.items.size())
    throw SexprError("missing argument " + std::to_string(i) + " of " + head(n));
  return n.items[i + 1];
}

std::string str(const SNode& n) {
  if (n.kind != SNode::String) throw SexprError("expected string literal");
  return n.text;
}

std::string atom(const SNode& n) {
  if (n.kind != SNode::Atom) throw SexprError("expected identifier");
  return n.text;
}

Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
    return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)),
                    boost::multiprecision::cpp_int(s.substr(slash + 1)));
  } catch (const std::exception&) {
    throw SexprError("malformed number '" + s + "'");
  }
}

PropPtr to_prop(const SNode& n);

TermPtr to_term(const SNode& n) {
  const auto& h = head(n);
  if (h == "TNum") return mk::num(parse_rational(atom(arg(n, 0))));
  if (h == "TInfty")
    return mk::infty(enum_from(atom(arg(n, 0)), {InftySign::Positive, InftySign::Negative}));
  if (h == "TConst") return mk::constant(str(arg(n, 0)));
  if (h == "TUnOp")
    return mk::unop(enum_from(atom(arg(n, 0)),
                              {TermUnOp::Neg, TermUnOp::Sup, TermUnOp::Infimum, TermUnOp::Ln,
                               TermUnOp::Exp, TermUnOp::Sqrt, TermUnOp::Sin, TermUnOp::Cos,
                               TermUnOp::Tan, TermUnOp::Abs, TermUnOp::Deriv}),
                    to_term(arg(n, 1)));
  if (h == "TBinOp")
    return mk::binop(enum_from(atom(arg(n, 0)), {TermBinOp::Add, TermBinOp::Sub, TermBinOp::Mul,
                                                 TermBinOp::Div, TermBinOp::Pow, TermBinOp::RLim}),
                     to_term(arg(n, 1)), to_term(arg(n, 2)));
  if (h == "TApply") return mk::apply(to_term(arg(n, 0)), to_term(arg(n, 1)));
  if (h == "TBinder")
    return mk::binder(enum_from(atom(arg(n, 0)), {Binder::SeqLimitB, Binder::LambdaB}),
                      str(arg(n, 1)), to_term(arg(n, 2)));
  if (h == "TVar") return mk::var(str(arg(n, 0)));
  if (h == "TInterval")
    return mk::interval(enum_from(atom(arg(n, 0)), {IntervalKind::Open, IntervalKind::Closed,
                                                    IntervalKind::LeftOpen,
                                                    IntervalKind::RightOpen}),
                        to_term(arg(n, 1)), to_term(arg(n, 2)));
  if (h == "TSet") {
    const auto& vs = arg(n, 0);
    if (vs.kind != SNode::Bracket) throw SexprError("TSet expects a variable list");
    std::vector<std::string> vars;
    for (const auto& v : vs.items) vars.push_back(str(v));
    return mk::set(std::move(vars), to_term(arg(n, 1)), to_prop(arg(n, 2)));
  }
  throw SexprError("unknown term constructor '" + h + "'");
}

constexpr std::initializer_list<BinPred> kBinPreds = {
    BinPred::REq, BinPred::RNe, BinPred::RLt, BinPred::RGt, BinPred::RLe, BinPred::RGe,
    BinPred::In, BinPred::IsSubseq, BinPred::UpperBoundOf, BinPred::LowerBoundOf,
    BinPred::ContinuousAt};

PropPtr to_prop(const SNode& n) {
  const auto& h = head(n);
  if (h == "PTrue") return mk::truth();
  if (h == "PFalse") return mk::falsity();
  if (h == "PUnPred")
    return mk::unpred(
        enum_from(atom(arg(n, 0)),
                  {UnPred::MonotonicIncreasing, UnPred::MonotonicDecreasing, UnPred::UpperBounded,
                   UnPred::LowerBounded, UnPred::Bounded, UnPred::Convergent, UnPred::Continuous}),
        to_term(arg(n, 1)));
  if (h == "PBinPred")
    return mk::binpred(enum_from(atom(arg(n, 0)), kBinPreds), to_term(arg(n, 1)),
                       to_term(arg(n, 2)));
  if (h == "PCBinPred") {
    const auto& cs = arg(n, 3);
    if (cs.kind != SNode::Bracket) throw SexprError("PCBinPred expects a context list");
    std::vector<PropPtr> ctx;
    for (const auto& c : cs.items) ctx.push_back(to_prop(c));
    return mk::cbinpred(enum_from(atom(arg(n, 0)), kBinPreds), to_term(arg(n, 1)),
                        to_term(arg(n, 2)), std::move(ctx));
  }
  if (h == "PLongOrder") {
    const auto& os = arg(n, 0);
    if (os.kind != SNode::Bracket) throw SexprError("PLongOrder expects an order list");
    std::vector<BinPred> orders;
    for (const auto& o : os.items) orders.push_back(enum_from(atom(o), kBinPreds));
    std::vector<TermPtr> terms;
    for (std::size_t i = 2; i < n.items.size(); ++i) terms.push_back(to_term(n.items[i]));
    if (orders.size() < 2 || terms.size() != orders.size() + 1)
      throw SexprError("PLongOrder arity mismatch");
    return mk::long_order(std::move(orders), std::move(terms));
  }
  if (h == "PUnOp") {
    if (atom(arg(n, 0)) != "CNot") throw SexprError("unknown prop operator");
    return mk::negate(to_prop(arg(n, 1)));
  }
  if (h == "PBinOp")
    return mk::binop(enum_from(atom(arg(n, 0)), {PropBinOp::CAnd, PropBinOp::COr,
                                                 PropBinOp::CImply, PropBinOp::CIff}),
                     to_prop(arg(n, 1)), to_prop(arg(n, 2)));
  if (h == "PQuant") {
    auto q = enum_from(atom(arg(n, 0)), {Quantifier::Forall, Quantifier::Exists});
    return q == Quantifier::Forall ? mk::forall(str(arg(n, 1)), to_prop(arg(n, 2)))
                                   : mk::exists(str(arg(n, 1)), to_prop(arg(n, 2)));
  }
  throw SexprError("unknown prop constructor '" + h + "'");
}

FwdMethod to_fwd(const SNode& n) {
  const auto& h = head(n);
  if (h == "FNoHint") return FNoHint{};
  if (h == "FDefinition") return FDefinition{atom(arg(n, 0))};
  if (h == "FTheorem") return FTheorem{atom(arg(n, 0))};
  if (h == "FAddEqn") {
    const auto& ls = arg(n, 0);
    if (ls.kind != SNode::Bracket) throw SexprError("FAddEqn expects a label list");
    FAddEqn m;
    for (const auto& l : ls.items) m.labels.push_back(str(l));
    return m;
  }
  if (h == "FDeriBothTerms") return FDeriBothTerms{str(arg(n, 0))};
  throw SexprError("unknown forward method '" + h + "'");
}

BwdMethod to_bwd(const SNode& n) {
  auto a = atom(n);
  if (a == "BNoHint") return BwdMethod::BNoHint;
  if (a == "BContra") return BwdMethod::BContra;
  throw SexprError("unknown backward method '" + a + "'");
}

struct ProofReader {
  int counter = 0;

  ProofPtr make(decltype(ProofNode::node) n) {
    return mk::node(std::move(n), {}, "h" + std::to_string(++counter));
  }

  ProofPtr read(const SNode& n) {
    const auto& h = head(n);
    if (h == "Nil") return nullptr;
    if (h == "EndPartialProof") return make(EndPartialProof{});
    if (h == "ProofAction") {
      const auto& a = arg(n, 0);
      const auto& ah = head(a);
      Action action;
      if (ah == "AIntros") action = AIntros{str(arg(a, 0))};
      else if (ah == "AExists") action = AExists{to_term(arg(a, 0))};
      else if (ah == "ASuppose") action = ASuppose{to_prop(arg(a, 0))};
      else if (ah == "ASet") action = ASet{str(arg(a, 0)), to_term(arg(a, 1))};
      else if (ah == "ASetProp") action = ASetProp{to_prop(arg(a, 0))};
      else if (ah == "AExistVar") action = AExistVar{str(arg(a, 0))};
      else throw SexprError("unknown action '" + ah + "'");
      auto self = make(ProofAction{});
      return with_node(self, ProofAction{std::move(action), read(arg(n, 1))});
    }
    if (h == "PoseWithoutProof") {
      auto self = make(EndPartialProof{});
      return with_node(self, PoseWithoutProof{to_fwd(arg(n, 0)), to_prop(arg(n, 1)),
                                              read(arg(n, 2))});
    }
    if (h == "PoseAndProve") {
      auto self = make(EndPartialProof{});
      auto sub = read(arg(n, 2));
      return with_node(self, PoseAndProve{to_fwd(arg(n, 0)), to_prop(arg(n, 1)), sub,
                                          read(arg(n, 3))});
    }
    if (h == "ClaimSuffice") {
      auto self = make(EndPartialProof{});
      return with_node(self,
                       ClaimSuffice{to_bwd(arg(n, 0)), to_prop(arg(n, 1)), read(arg(n, 2))});
    }
    if (h == "ProveSuffice") {
      auto self = make(EndPartialProof{});
      auto sub = read(arg(n, 2));
      return with_node(self, ProveSuffice{to_bwd(arg(n, 0)), to_prop(arg(n, 1)), sub,
                                          read(arg(n, 3))});
    }
    if (h == "ConclWithoutProof") return make(ConclWithoutProof{to_fwd(arg(n, 0))});
    if (h == "ConclAndProve") {
      auto self = make(EndPartialProof{});
      return with_node(self, ConclAndProve{to_fwd(arg(n, 0)), read(arg(n, 1))});
    }
    if (h == "PosePartialProof") {
      const auto& pa = arg(n, 0);
      PoseAction pose;
      if (head(pa) == "APoseVar") {
        const auto& as = arg(pa, 1);
        if (as.kind != SNode::Bracket) throw SexprError("APoseVar expects an assumption list");
        APoseVar v{str(arg(pa, 0)), {}};
        for (const auto& x : as.items) v.assumptions.push_back(to_prop(x));
        pose = std::move(v);
      } else if (head(pa) == "APoseProp") {
        pose = APoseProp{to_prop(arg(pa, 0))};
      } else {
        throw SexprError("unknown pose action '" + head(pa) + "'");
      }
      auto self = make(EndPartialProof{});
      auto partial = read(arg(n, 1));
      return with_node(self, PosePartialProof{std::move(pose), partial, read(arg(n, 2))});
    }
    throw SexprError("unknown proof constructor '" + h + "'");
  }

  static ProofPtr with_node(const ProofPtr& self, decltype(ProofNode::node) n) {
    auto copy = std::make_shared<ProofNode>(*self);
    copy->node = std::move(n);
    return copy;
  }
};

}  // namespace

std::string to_sexpr(const TermPtr& t) {
  std::ostringstream os;
  write(os, t);
  return os.str();
}

std::string to_sexpr(const PropPtr& p) {
  if (!p) return "Hole";
  std::ostringstream os;
  write(os, p);
  return os.str();
}

std::string to_sexpr(const FwdMethod& m) { return method_text(m); }

std::string to_sexpr(const ProofPtr& p) {
  std::ostringstream os;
  write_proof(os, p, 0);
  return os.str();
}

std::string to_sexpr(const ProofGoal& g) {
  std::ostringstream os;
  os << "(ProofGoal [";
  for (std::size_t i = 0; i < g.premises.size(); ++i) {
    if (i) os << " ";
    os << "(" << quote(g.premises[i].label) << " " << to_sexpr(g.premises[i].prop) << ")";
  }
  os << "] " << to_sexpr(g.conclusion) << ")";
  return os.str();
}

TermPtr read_term(const std::string& text) {
  SReader r(text);
  auto n = r.read();
  r.expect_end();
  return to_term(n);
}

PropPtr read_prop(const std::string& text) {
  SReader r(text);
  auto n = r.read();
  r.expect_end();
  return to_prop(n);
}

ProofPtr read_proof(const std::string& text) {
  SReader r(text);
  auto n = r.read();
  r.expect_end();
  ProofReader pr;
  return pr.read(n);
}

}  // namespace naproof
