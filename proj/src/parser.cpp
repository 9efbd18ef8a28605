#include "naproof/parser.hpp"

#include "naproof/ast_ops.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <set>

namespace naproof {

ParseError::ParseError(std::vector<ParseDiagnostic> ds)
    : std::runtime_error(ds.empty() ? "parse error" : format_diagnostic(ds.front())),
      diagnostics(std::move(ds)) {}

namespace {

struct Failure {
  ParseDiagnostic diag;
};

Rational decimal(const std::string& text) {
  auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(boost::multiprecision::cpp_int(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  boost::multiprecision::cpp_int den = 1;
  for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
  return Rational(boost::multiprecision::cpp_int(digits), den);
}

bool is_relation(TokKind k) {
  return k == TokKind::Eq || k == TokKind::Ne || k == TokKind::Lt || k == TokKind::Gt ||
         k == TokKind::Le || k == TokKind::Ge;
}

BinPred relation_of(TokKind k) {
  switch (k) {
    case TokKind::Eq: return BinPred::REq;
    case TokKind::Ne: return BinPred::RNe;
    case TokKind::Lt: return BinPred::RLt;
    case TokKind::Gt: return BinPred::RGt;
    case TokKind::Le: return BinPred::RLe;
    default: return BinPred::RGe;
  }
}

const std::set<std::string>& predicate_keywords() {
  static const std::set<std::string> s = {
      "MonoInc", "MonoDec", "BoundedAbove", "BoundedBelow", "Bounded", "Convergent",
      "Continuous", "UpperBoundOf", "LowerBoundOf", "SubseqOf", "In", "Under"};
  return s;
}

const std::map<std::string, TermUnOp>& function_keywords() {
  static const std::map<std::string, TermUnOp> m = {
      {"Sin", TermUnOp::Sin}, {"Cos", TermUnOp::Cos},   {"Tan", TermUnOp::Tan},
      {"Ln", TermUnOp::Ln},   {"Exp", TermUnOp::Exp},   {"Sqrt", TermUnOp::Sqrt},
      {"Abs", TermUnOp::Abs}, {"Sup", TermUnOp::Sup},   {"Infimum", TermUnOp::Infimum}};
  return m;
}

// A statement under construction: nodes are linked once the whole block is read.
struct Pending {
  std::shared_ptr<ProofNode> node;
};

void set_rest(ProofNode& n, ProofPtr rest) {
  std::visit(
      [&](auto& x) {
        if constexpr (requires { x.rest; }) x.rest = std::move(rest);
      },
      n.node);
}

bool is_terminal(const ProofNode& n) {
  return std::holds_alternative<ConclWithoutProof>(n.node) ||
         std::holds_alternative<ConclAndProve>(n.node) ||
         std::holds_alternative<EndPartialProof>(n.node);
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  std::vector<ParseDiagnostic> diagnostics;

  bool at_end() const { return pos_ >= toks_.size(); }

  TermPtr whole_term() {
    auto t = expr();
    expect_end();
    return t;
  }

  PropPtr whole_prop() {
    auto p = prop();
    expect_end();
    return p;
  }

  ProofPtr whole_proof() {
    auto p = block(false);
    return p;
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  // ---- token helpers ------------------------------------------------------

  const Token* peek(std::size_t k = 0) const {
    return pos_ + k < toks_.size() ? &toks_[pos_ + k] : nullptr;
  }
  bool at(TokKind k, std::size_t off = 0) const {
    auto t = peek(off);
    return t && t->kind == k;
  }
  bool at_kw(std::string_view c, std::size_t off = 0) const {
    auto t = peek(off);
    return t && t->kind == TokKind::Keyword && t->text == c;
  }
  bool accept(TokKind k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  bool accept_kw(std::string_view c) {
    if (!at_kw(c)) return false;
    ++pos_;
    return true;
  }

  Span here() const {
    if (auto t = peek()) return t->span;
    if (!toks_.empty()) return Span{toks_.back().span.end, toks_.back().span.end};
    return Span{{1, 1}, {1, 1}};
  }
  SourcePos last_end() const {
    return pos_ > 0 ? toks_[pos_ - 1].span.end : here().start;
  }

  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const {
    std::string found = peek() ? describe(*peek()) : "end of input";
    throw Failure{{here(), msg + ", found " + found, std::move(expected)}};
  }

  const Token& expect(TokKind k, const std::string& what) {
    if (!at(k)) fail("expected " + what, {what});
    return toks_[pos_++];
  }
  void expect_kw(std::string_view c, const std::string& what) {
    if (!accept_kw(c)) fail("expected " + what, {what});
  }
  std::string ident(const std::string& what = "identifier") {
    return expect(TokKind::Ident, what).text;
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input", {"end of input"});
  }

  template <class F>
  auto attempt(F&& f) -> std::optional<decltype(f())> {
    auto saved = pos_;
    try {
      return f();
    } catch (const Failure&) {
      pos_ = saved;
      return std::nullopt;
    }
  }

  // ---- terms ----------------------------------------------------------------

  TermPtr expr() {
    auto t = mul();
    for (;;) {
      if (accept(TokKind::Plus)) t = mk::add(t, mul());
      else if (accept(TokKind::Minus)) t = mk::sub(t, mul());
      else return t;
    }
  }

  bool starts_factor() const {
    auto t = peek();
    if (!t) return false;
    switch (t->kind) {
      case TokKind::Ident:
      case TokKind::LParen:
        return true;
      case TokKind::Keyword:
        return function_keywords().count(t->text) || t->text == "Lim";
      default:
        return false;
    }
  }

  // A numeral may be followed directly by a factor: 2x, 2(x+1), 2 sin(x).
  TermPtr mul() {
    bool literal = false;
    auto t = factor(literal);
    for (;;) {
      if (accept(TokKind::Star)) t = mk::mul(t, factor(literal));
      else if (accept(TokKind::Slash)) t = mk::div(t, factor(literal));
      else if (literal && starts_factor()) t = mk::mul(t, factor(literal));
      else return t;
    }
  }

  // Unary minus folds into a numeral unless an exponent follows: -3 vs -3^2.
  TermPtr factor(bool& literal) {
    literal = false;
    if (accept(TokKind::Minus)) {
      if (at(TokKind::Num) && !at(TokKind::Caret, 1)) {
        literal = true;
        return mk::num(-decimal(toks_[pos_++].text));
      }
      if (accept_kw("Infty")) return mk::infty(InftySign::Negative);
      bool inner = false;
      return mk::neg(factor(inner));
    }
    if (accept(TokKind::Plus)) return factor(literal);
    literal = at(TokKind::Num) && !at(TokKind::Caret, 1);
    return power();
  }

  TermPtr power() {
    auto base = postfix();
    if (accept(TokKind::Caret)) {
      bool literal = false;
      return mk::pow(base, factor(literal));
    }
    return base;
  }

  static bool applicable(const TermPtr& t) {
    if (std::holds_alternative<TVar>(t->node) || std::holds_alternative<TApply>(t->node) ||
        std::holds_alternative<TBinder>(t->node))
      return true;
    auto u = std::get_if<TUnOpNode>(&t->node);
    return u && u->op == TermUnOp::Deriv;
  }

  TermPtr postfix() {
    auto t = primary();
    for (;;) {
      if (at(TokKind::Subscript)) {
        auto& tok = toks_[pos_++];
        TermPtr idx = std::isdigit(static_cast<unsigned char>(tok.text[0]))
                          ? mk::num(decimal(tok.text))
                          : mk::var(tok.text);
        t = mk::apply(t, idx);
      } else if (at(TokKind::Underscore) && at(TokKind::LBrace, 1)) {
        pos_ += 2;
        auto idx = expr();
        expect(TokKind::RBrace, "'}'");
        t = mk::apply(t, idx);
      } else if (at(TokKind::Prime)) {
        ++pos_;
        t = mk::unop(TermUnOp::Deriv, t);
      } else if (at(TokKind::LParen) && applicable(t)) {
        ++pos_;
        auto arg = expr();
        expect(TokKind::RParen, "')'");
        t = mk::apply(t, arg);
      } else {
        return t;
      }
    }
  }

  // Body of a limit written without an explicit subscript: lim a_n.
  TermPtr implicit_limit(const TermPtr& body) {
    auto app = std::get_if<TApply>(&body->node);
    auto v = app ? as_var(app->arg) : nullptr;
    if (!v) fail("limit without subscript needs a sequence term like a_n", {"a_n"});
    return mk::limit(mk::infty(), v->name, body);
  }

  TermPtr primary() {
    auto t = peek();
    if (!t) fail("expected term", {"term"});
    switch (t->kind) {
      case TokKind::Num:
        ++pos_;
        return mk::num(decimal(t->text));
      case TokKind::Ident: {
        ++pos_;
        if (t->text == "e" || t->text == "pi") return mk::constant(t->text);
        if (t->text == "d" && at(TokKind::Slash) && peek(1) && peek(1)->kind == TokKind::Ident &&
            peek(1)->text.size() > 1 && peek(1)->text[0] == 'd') {
          std::string v = peek(1)->text.substr(1);
          pos_ += 2;
          auto body = postfix();
          return mk::apply(mk::unop(TermUnOp::Deriv, mk::lambda(v, body)), mk::var(v));
        }
        return mk::var(t->text);
      }
      case TokKind::Bar: {
        ++pos_;
        auto inner = expr();
        expect(TokKind::Bar, "'|'");
        return mk::unop(TermUnOp::Abs, inner);
      }
      case TokKind::LParen: {
        ++pos_;
        auto a = expr();
        if (accept(TokKind::Comma)) {
          auto b = expr();
          if (accept(TokKind::RParen)) return mk::interval(IntervalKind::Open, a, b);
          expect(TokKind::RBrack, "')' or ']'");
          return mk::interval(IntervalKind::LeftOpen, a, b);
        }
        expect(TokKind::RParen, "')'");
        return a;
      }
      case TokKind::LBrack: {
        ++pos_;
        auto a = expr();
        expect(TokKind::Comma, "','");
        auto b = expr();
        if (accept(TokKind::RBrack)) return mk::interval(IntervalKind::Closed, a, b);
        expect(TokKind::RParen, "']' or ')'");
        return mk::interval(IntervalKind::RightOpen, a, b);
      }
      case TokKind::LBrace:
        return set_term();
      case TokKind::Keyword:
        return keyword_term(*t);
      default:
        fail("expected term", {"term"});
    }
  }

  TermPtr set_term() {
    expect(TokKind::LBrace, "'{'");
    auto elem = expr();
    if (accept(TokKind::RBrace)) return mk::set({}, elem, mk::truth());
    expect(TokKind::Bar, "'|' or '}'");
    std::vector<std::string> vars;
    bool explicit_vars = false;
    {
      auto saved = pos_;
      std::vector<std::string> vs;
      while (at(TokKind::Ident)) {
        vs.push_back(toks_[pos_++].text);
        if (!accept(TokKind::Comma)) break;
      }
      if (accept(TokKind::Colon)) {
        vars = vs;
        explicit_vars = true;
      } else {
        pos_ = saved;
      }
    }
    if (!explicit_vars) {
      auto v = as_var(elem);
      if (!v) fail("set comprehension over a compound term needs explicit variables", {"vars :"});
      vars = {v->name};
    }
    auto cond = prop();
    expect(TokKind::RBrace, "'}'");
    return mk::set(std::move(vars), elem, cond);
  }

  TermPtr keyword_term(const Token& t) {
    auto fn = function_keywords().find(t.text);
    if (fn != function_keywords().end()) {
      ++pos_;
      return mk::unop(fn->second, postfix());
    }
    if (t.text == "Infty") {
      ++pos_;
      return mk::infty();
    }
    if (t.text == "Fun") {
      ++pos_;
      auto v = ident("bound variable");
      expect(TokKind::Arrow, "'->'");
      return mk::lambda(v, expr());
    }
    if (t.text == "LimSeq") {
      ++pos_;
      return implicit_limit(postfix());
    }
    if (t.text == "Lim") {
      ++pos_;
      if (at(TokKind::Underscore) && at(TokKind::LBrace, 1)) {
        pos_ += 2;
        auto v = ident("limit variable");
        expect(TokKind::Arrow, "'->'");
        auto point = expr();
        expect(TokKind::RBrace, "'}'");
        return mk::limit(point, v, limit_body());
      }
      return implicit_limit(limit_body());
    }
    fail("expected term", {"term"});
  }

  TermPtr limit_body() { return mul(); }

  // ---- propositions ---------------------------------------------------------

 public:
  PropPtr prop() {
    auto l = implication();
    if (accept_kw("Iff")) return mk::iff(l, implication());
    return l;
  }

 private:
  PropPtr implication() {
    auto l = disjunction();
    if (accept_kw("Implies")) return mk::implies(l, implication());
    return l;
  }

  PropPtr disjunction() {
    auto l = conjunction();
    if (accept_kw("Or")) return mk::disj(l, disjunction());
    return l;
  }

  PropPtr conjunction() {
    auto l = prop_unary();
    if (accept_kw("And")) return mk::conj(l, conjunction());
    return l;
  }

  // Restriction `x rel t` or `x in S` after a quantified variable.
  std::optional<PropPtr> binder_restriction(const std::string& v) {
    if (peek() && is_relation(peek()->kind)) {
      auto rel = relation_of(toks_[pos_++].kind);
      return mk::binpred(rel, mk::var(v), expr());
    }
    if (accept_kw("In")) return mk::binpred(BinPred::In, mk::var(v), expr());
    return std::nullopt;
  }

  PropPtr prop_unary() {
    if (accept_kw("Not")) return mk::negate(prop_unary());
    if (accept_kw("True")) return mk::truth();
    if (accept_kw("False")) return mk::falsity();
    if (accept_kw("ForEvery")) {
      auto v = ident("bound variable");
      std::vector<PropPtr> conds;
      if (auto r = binder_restriction(v)) conds.push_back(*r);
      if (accept_kw("SuchThat")) conds.push_back(prop_until_comma());
      accept(TokKind::Comma);
      auto body = prop();
      if (!conds.empty()) body = mk::implies(mk::conj_all(conds), body);
      return mk::forall(v, body);
    }
    if (accept_kw("ThereExists")) {
      auto v = ident("bound variable");
      std::vector<PropPtr> conds;
      if (auto r = binder_restriction(v)) conds.push_back(*r);
      expect_kw("SuchThat", "'such that'");
      conds.push_back(prop());
      return mk::exists(v, mk::conj_all(conds));
    }
    if (accept_kw("If")) {
      auto a = prop();
      expect_kw("Then", "'then'");
      return mk::implies(a, prop());
    }
    if (at(TokKind::LParen)) {
      auto inner = attempt([&] {
        ++pos_;
        auto p = prop();
        expect(TokKind::RParen, "')'");
        if (continues_term()) fail("term continues");
        return p;
      });
      if (inner) return *inner;
    }
    return atom();
  }

  // Condition of `for every x such that P, Q`: P stops before the comma.
  PropPtr prop_until_comma() { return prop(); }

  bool continues_term() const {
    auto t = peek();
    if (!t) return false;
    if (is_relation(t->kind)) return true;
    switch (t->kind) {
      case TokKind::Plus: case TokKind::Minus: case TokKind::Star: case TokKind::Slash:
      case TokKind::Caret: case TokKind::Subscript: case TokKind::Prime:
      case TokKind::LParen: case TokKind::Underscore:
        return true;
      case TokKind::Keyword:
        return predicate_keywords().count(t->text) > 0;
      default:
        return false;
    }
  }

  PropPtr atom() {
    auto l = expr();
    auto t = peek();
    if (t && is_relation(t->kind)) {
      std::vector<BinPred> orders;
      std::vector<TermPtr> terms{l};
      while (peek() && is_relation(peek()->kind)) {
        orders.push_back(relation_of(toks_[pos_++].kind));
        terms.push_back(expr());
      }
      if (orders.size() == 1) {
        if (accept_kw("Under")) {
          expect(TokKind::LParen, "'('");
          std::vector<PropPtr> ctx;
          if (!at(TokKind::RParen)) {
            ctx.push_back(prop());
            while (accept(TokKind::Semicolon)) ctx.push_back(prop());
          }
          expect(TokKind::RParen, "')'");
          return mk::cbinpred(orders[0], terms[0], terms[1], std::move(ctx));
        }
        return mk::binpred(orders[0], terms[0], terms[1]);
      }
      bool all_eq = true;
      for (auto o : orders) all_eq = all_eq && o == BinPred::REq;
      if (all_eq) {
        std::vector<PropPtr> links;
        for (std::size_t i = 0; i < orders.size(); ++i)
          links.push_back(mk::eq(terms[i], terms[i + 1]));
        return mk::conj_all(links);
      }
      return mk::long_order(std::move(orders), std::move(terms));
    }
    if (t && t->kind == TokKind::Keyword) {
      static const std::map<std::string, UnPred> unary = {
          {"MonoInc", UnPred::MonotonicIncreasing}, {"MonoDec", UnPred::MonotonicDecreasing},
          {"BoundedAbove", UnPred::UpperBounded},   {"BoundedBelow", UnPred::LowerBounded},
          {"Bounded", UnPred::Bounded},             {"Convergent", UnPred::Convergent}};
      if (auto u = unary.find(t->text); u != unary.end()) {
        ++pos_;
        return mk::unpred(u->second, l);
      }
      if (t->text == "Continuous") {
        ++pos_;
        if (accept_kw("At")) return mk::binpred(BinPred::ContinuousAt, l, expr());
        return mk::unpred(UnPred::Continuous, l);
      }
      static const std::map<std::string, BinPred> binary = {
          {"In", BinPred::In},
          {"UpperBoundOf", BinPred::UpperBoundOf},
          {"LowerBoundOf", BinPred::LowerBoundOf},
          {"SubseqOf", BinPred::IsSubseq}};
      if (auto b = binary.find(t->text); b != binary.end()) {
        ++pos_;
        return mk::binpred(b->second, l, expr());
      }
    }
    fail("expected relation or predicate", {"=", "<", "is ..."});
  }

  // ---- proofs ---------------------------------------------------------------

  bool at_separator() const {
    return at(TokKind::Comma) || at(TokKind::Period) || at(TokKind::Semicolon) ||
           at(TokKind::Newline);
  }
  void skip_separators() {
    while (at_separator()) ++pos_;
  }

  void recover() {
    int depth = 0;
    while (!at_end()) {
      if (at(TokKind::LBrace)) ++depth;
      if (at(TokKind::RBrace)) {
        if (depth == 0) return;
        --depth;
      }
      if (depth == 0 && at_separator()) return;
      ++pos_;
    }
  }

  std::optional<std::string> statement_label() {
    if (at(TokKind::LParen) && peek(1) &&
        (peek(1)->kind == TokKind::Num || peek(1)->kind == TokKind::Ident) &&
        at(TokKind::RParen, 2)) {
      // `(x) > 0` is a proposition, not a label.
      auto after = peek(3);
      if (after && (is_relation(after->kind) || after->kind == TokKind::Plus ||
                    after->kind == TokKind::Minus || after->kind == TokKind::Star ||
                    after->kind == TokKind::Slash || after->kind == TokKind::Caret))
        return std::nullopt;
      if (peek(1)->kind == TokKind::Ident && !after) return std::nullopt;
      auto label = peek(1)->text;
      pos_ += 3;
      return label;
    }
    return std::nullopt;
  }

  ProofPtr block(bool braced) {
    std::vector<Pending> stmts;
    bool closed = false;
    for (;;) {
      skip_separators();
      if (at_end()) break;
      if (at(TokKind::RBrace)) {
        if (braced) {
          closed = true;
          break;
        }
        diagnostics.push_back({here(), "unmatched '}'", {}});
        ++pos_;
        continue;
      }
      if (!stmts.empty() && is_terminal(*stmts.back().node)) {
        diagnostics.push_back({here(), "statement after the concluding step", {"'}'", "end of proof"}});
        recover();
        if (!at_end() && !at(TokKind::RBrace)) ++pos_;
        continue;
      }
      try {
        auto start = here().start;
        auto label = statement_label();
        auto nodes = statement();
        Span span{start, last_end()};
        if (!at_end() && !at_separator() && !at(TokKind::RBrace))
          fail("expected end of statement", {"','", "'.'", "newline"});
        for (auto& n : nodes) {
          n.node->span = span;
          if (label) {
            n.node->label = *label;
            n.node->explicit_label = true;
            label.reset();
          }
          stmts.push_back(n);
        }
      } catch (const Failure& f) {
        diagnostics.push_back(f.diag);
        recover();
      }
    }
    if (braced && !closed) diagnostics.push_back({here(), "missing '}'", {"'}'"}});
    if (braced && closed) ++pos_;
    ProofPtr rest;
    for (auto it = stmts.rbegin(); it != stmts.rend(); ++it) {
      set_rest(*it->node, rest);
      rest = it->node;
    }
    return rest;
  }

  ProofPtr subproof() {
    expect(TokKind::LBrace, "'{'");
    return block(true);
  }

  template <class N>
  static Pending make(N n) {
    auto p = std::make_shared<ProofNode>();
    p->node = std::move(n);
    return {p};
  }

  std::optional<FwdMethod> knowledge() {
    auto t = peek();
    if (!t || t->kind != TokKind::Keyword) return std::nullopt;
    if (t->text == "Definition") {
      ++pos_;
      return FDefinition{ident("definition name")};
    }
    if (t->text == "Theorem") {
      ++pos_;
      return FTheorem{ident("theorem name")};
    }
    if (t->text.rfind("def.", 0) == 0) {
      ++pos_;
      return FDefinition{t->text.substr(4)};
    }
    if (t->text.rfind("thm.", 0) == 0) {
      ++pos_;
      return FTheorem{t->text.substr(4)};
    }
    return std::nullopt;
  }

  FwdMethod since_clause() {
    if (accept_kw("Obviously") || accept_kw("Similarly")) return FNoHint{};
    if (accept_kw("Because")) {
      prop();
      return FNoHint{};
    }
    if (accept_kw("Since")) {
      if (auto k = knowledge()) return *k;
      prop();
      return FNoHint{};
    }
    expect_kw("By", "'By'");
    if (auto k = knowledge()) return *k;
    if (accept_kw("Adding")) {
      FAddEqn m;
      while (at(TokKind::LParen)) {
        ++pos_;
        auto t = peek();
        if (!t || (t->kind != TokKind::Num && t->kind != TokKind::Ident))
          fail("expected step label", {"(k)"});
        m.labels.push_back(t->text);
        ++pos_;
        expect(TokKind::RParen, "')'");
        accept_kw("And");
      }
      if (m.labels.empty()) fail("expected step labels after 'adding'", {"(k)"});
      accept_kw("OnBothSides");
      return m;
    }
    if (accept_kw("TakingDerivative")) {
      auto v = ident("variable");
      accept_kw("OnBothSides");
      return FDeriBothTerms{v};
    }
    fail("expected justification after 'By'", {"definition", "theorem", "adding"});
  }

  bool at_since() const {
    return at_kw("By") || at_kw("Since") || at_kw("Because") || at_kw("Obviously") ||
           at_kw("Similarly");
  }

  std::vector<Pending> conclusion(FwdMethod m) {
    if (at(TokKind::LBrace)) return {make(ConclAndProve{m, subproof()})};
    return {make(ConclWithoutProof{m})};
  }

  std::vector<Pending> pose(FwdMethod m, PropPtr p) {
    if (at(TokKind::LBrace)) {
      auto sub = subproof();
      return {make(PoseAndProve{m, p, sub, nullptr})};
    }
    return {make(PoseWithoutProof{m, p, nullptr})};
  }

  std::vector<Pending> let_like(const std::string& v) {
    if (accept(TokKind::Eq)) return {make(ProofAction{ASet{v, expr()}, nullptr})};
    std::vector<PropPtr> assumptions;
    if (auto r = binder_restriction(v)) assumptions.push_back(*r);
    if (accept_kw("SuchThat")) assumptions.push_back(prop());
    if (at(TokKind::LBrace)) {
      auto sub = subproof();
      return {make(PosePartialProof{APoseVar{v, assumptions}, sub, nullptr})};
    }
    std::vector<Pending> out{make(ProofAction{AIntros{v}, nullptr})};
    if (!assumptions.empty())
      out.push_back(make(ProofAction{ASuppose{mk::conj_all(assumptions)}, nullptr}));
    return out;
  }

  // "Consequently, we have P"
  void skip_then() {
    while (accept_kw("Then")) accept(TokKind::Comma);
  }

  std::vector<Pending> statement() {
    if (accept_kw("Concl")) return conclusion(FNoHint{});
    if (accept_kw("EndPartial")) return {make(EndPartialProof{})};
    if (accept_kw("Use")) {
      auto k = knowledge();
      if (!k) fail("expected definition or theorem", {"definition", "theorem"});
      expect_kw("ToProve", "'to prove the proposition'");
      return conclusion(*k);
    }
    if (accept_kw("WeUse")) {
      auto k = knowledge();
      if (!k) fail("expected definition or theorem", {"definition", "theorem"});
      expect_kw("ToShow", "'to show that'");
      auto p = prop();
      auto sub = subproof();
      return {make(PoseAndProve{*k, p, sub, nullptr})};
    }
    if (accept_kw("FollowingProves")) {
      auto p = prop();
      auto sub = subproof();
      return {make(PoseAndProve{FNoHint{}, p, sub, nullptr})};
    }
    if (accept_kw("Suffices") || at_kw("Contra")) {
      auto method = accept_kw("Contra") ? BwdMethod::BContra : BwdMethod::BNoHint;
      auto p = prop();
      if (at(TokKind::LBrace)) {
        auto sub = subproof();
        return {make(ProveSuffice{method, p, sub, nullptr})};
      }
      return {make(ClaimSuffice{method, p, nullptr})};
    }
    if (accept_kw("Let")) return let_like(ident("variable name"));
    if (at_kw("ForEvery")) {
      auto partial = attempt([&] {
        ++pos_;
        auto v = ident("variable name");
        std::vector<PropPtr> assumptions;
        if (auto r = binder_restriction(v)) assumptions.push_back(*r);
        if (accept_kw("SuchThat")) assumptions.push_back(prop());
        if (!at(TokKind::LBrace)) fail("not a partial proof");
        auto sub = subproof();
        return std::vector<Pending>{
            make(PosePartialProof{APoseVar{v, assumptions}, sub, nullptr})};
      });
      if (partial) return *partial;
      return pose(FNoHint{}, prop());
    }
    if (accept_kw("Suppose")) {
      if (at(TokKind::Ident) && at_kw("SuchThat", 1)) return let_like(ident());
      auto p = prop();
      if (at(TokKind::LBrace)) {
        auto sub = subproof();
        return {make(PosePartialProof{APoseProp{p}, sub, nullptr})};
      }
      return {make(ProofAction{ASuppose{p}, nullptr})};
    }
    if (accept_kw("Set")) {
      auto v = ident("variable name");
      expect(TokKind::Eq, "'='");
      return {make(ProofAction{ASet{v, expr()}, nullptr})};
    }
    if (accept_kw("WeNote")) {
      auto v = ident("variable name");
      expect_kw("As", "'as'");
      return {make(ProofAction{ASet{v, expr()}, nullptr})};
    }
    if (accept_kw("Introduce")) return {make(ProofAction{ASetProp{prop()}, nullptr})};
    if (accept_kw("Obtain")) return {make(ProofAction{AExistVar{ident("variable name")}, nullptr})};
    if (at_kw("ThereExists")) {
      auto p = attempt([&] { return prop(); });
      if (p) return pose(FNoHint{}, *p);
      ++pos_;
      return {make(ProofAction{AExists{expr()}, nullptr})};
    }
    if (at_since()) {
      auto m = since_clause();
      accept(TokKind::Comma);
      if (accept_kw("Concl")) return conclusion(m);
      skip_then();
      return pose(m, prop());
    }
    skip_then();
    return pose(FNoHint{}, prop());
  }
};

// Auto labels h1, h2, ... in document order, skipping explicit labels.
ProofPtr assign_labels(const ProofPtr& root) {
  std::set<std::string> taken;
  std::function<void(const ProofPtr&)> collect = [&](const ProofPtr& p) {
    for (auto q = p; q; q = rest_of(*q)) {
      if (q->explicit_label) taken.insert(q->label);
      std::visit(
          [&](const auto& n) {
            if constexpr (requires { n.subproof; }) collect(n.subproof);
            if constexpr (requires { n.partial; }) collect(n.partial);
          },
          q->node);
    }
  };
  collect(root);
  int counter = 0;
  auto next = [&] {
    std::string l;
    do l = "h" + std::to_string(++counter);
    while (taken.count(l));
    return l;
  };
  // Nodes were created by this parser and are not yet shared.
  std::function<void(const ProofPtr&)> assign = [&](const ProofPtr& p) {
    for (auto q = p; q; q = rest_of(*q)) {
      auto& m = const_cast<ProofNode&>(*q);
      if (!m.explicit_label) m.label = next();
      std::visit(
          [&](const auto& n) {
            if constexpr (requires { n.subproof; }) assign(n.subproof);
            if constexpr (requires { n.partial; }) assign(n.partial);
          },
          q->node);
    }
  };
  assign(root);
  return root;
}

template <class F>
auto run(const SourceDocument& doc, const KeywordTable& table, F f)
    -> ParseResult<decltype(f(std::declval<Parser&>()))> {
  ParseResult<decltype(f(std::declval<Parser&>()))> out;
  auto toks = tokenize(doc, table);
  out.diagnostics = toks.diagnostics;
  if (!toks.ok()) return out;
  Parser p(std::move(toks.tokens));
  try {
    auto v = f(p);
    out.diagnostics.insert(out.diagnostics.end(), p.diagnostics.begin(), p.diagnostics.end());
    if (out.diagnostics.empty()) out.value = std::move(v);
  } catch (const Failure& e) {
    out.diagnostics.insert(out.diagnostics.end(), p.diagnostics.begin(), p.diagnostics.end());
    out.diagnostics.push_back(e.diag);
  }
  return out;
}

// Keeps line/column positions by blanking everything outside [from, to).
std::string mask(const std::string& text, std::size_t from, std::size_t to) {
  std::string out = text;
  for (std::size_t i = 0; i < out.size(); ++i)
    if ((i < from || i >= to) && out[i] != '\n') out[i] = ' ';
  return out;
}

}  // namespace

ParseResult<ProofPtr> parse_proof(const SourceDocument& doc, const KeywordTable& table) {
  auto r = run(doc, table, [](Parser& p) { return p.whole_proof(); });
  if (r.value) r.value = assign_labels(*r.value);
  return r;
}

ParseResult<PropPtr> parse_prop(const std::string& text, const KeywordTable& table) {
  return run(SourceDocument{text, {}}, table, [](Parser& p) { return p.whole_prop(); });
}

ParseResult<TermPtr> parse_term(const std::string& text, const KeywordTable& table) {
  return run(SourceDocument{text, {}}, table, [](Parser& p) { return p.whole_term(); });
}

ParseResult<Document> parse_document(const SourceDocument& doc, const KeywordTable& table) {
  ParseResult<Document> out;
  const auto& text = doc.text;
  // Locate "Theorem:" and "Proof:" at line starts, ignoring comment lines.
  auto find_header = [&](const std::string& word, std::size_t from) -> std::size_t {
    std::size_t i = from;
    while (i < text.size()) {
      auto eol = text.find('\n', i);
      if (eol == std::string::npos) eol = text.size();
      auto first = text.find_first_not_of(" \t\r", i);
      if (first != std::string::npos && first < eol && text.compare(first, word.size(), word) == 0)
        return first;
      i = eol + 1;
    }
    return std::string::npos;
  };
  auto thm = find_header("Theorem:", 0);
  auto prf = find_header("Proof:", thm == std::string::npos ? 0 : thm);
  if (thm == std::string::npos || prf == std::string::npos) {
    out.diagnostics.push_back({Span{{1, 1}, {1, 1}},
                               "expected a 'Theorem:' header followed by 'Proof:'",
                               {"Theorem:", "Proof:"}});
    return out;
  }
  SourceDocument thm_doc{mask(text, thm + 8, prf), doc.path};
  SourceDocument prf_doc{mask(text, prf + 6, text.size()), doc.path};
  auto t = run(thm_doc, table, [](Parser& p) { return p.whole_prop(); });
  auto p = parse_proof(prf_doc, table);
  out.diagnostics = t.diagnostics;
  out.diagnostics.insert(out.diagnostics.end(), p.diagnostics.begin(), p.diagnostics.end());
  if (out.diagnostics.empty()) out.value = Document{*t.value, *p.value};
  return out;
}

PropPtr prop_of(const std::string& text) {
  auto r = parse_prop(text);
  if (!r.ok()) throw ParseError(r.diagnostics);
  return *r.value;
}

TermPtr term_of(const std::string& text) {
  auto r = parse_term(text);
  if (!r.ok()) throw ParseError(r.diagnostics);
  return *r.value;
}

ProofPtr proof_of(const std::string& text) {
  auto r = parse_proof(SourceDocument{text, {}});
  if (!r.ok()) throw ParseError(r.diagnostics);
  return *r.value;
}

}  // namespace naproof
