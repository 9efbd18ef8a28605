#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace naproof {

using Rational = boost::multiprecision::cpp_rational;

struct Term;
struct Prop;
struct ProofNode;
using TermPtr = std::shared_ptr<const Term>;
using PropPtr = std::shared_ptr<const Prop>;
// A null ProofPtr marks the end of a statement chain.
using ProofPtr = std::shared_ptr<const ProofNode>;

// ---------------------------------------------------------------------------
// Vocabularies

enum class InftySign { Positive, Negative };
enum class TermUnOp { Neg, Sup, Infimum, Ln, Exp, Sqrt, Sin, Cos, Tan, Abs, Deriv };
enum class TermBinOp { Add, Sub, Mul, Div, Pow, RLim };
enum class Binder { SeqLimitB, LambdaB };
enum class IntervalKind { Open, Closed, LeftOpen, RightOpen };

enum class UnPred {
  MonotonicIncreasing,
  MonotonicDecreasing,
  UpperBounded,
  LowerBounded,
  Bounded,
  Convergent,
  Continuous,
};
enum class BinPred {
  REq, RNe, RLt, RGt, RLe, RGe,
  In, IsSubseq, UpperBoundOf, LowerBoundOf, ContinuousAt,
};
enum class PropUnOp { Not };
enum class PropBinOp { CAnd, COr, CImply, CIff };
enum class Quantifier { Forall, Exists };

std::string_view name_of(InftySign);
std::string_view name_of(TermUnOp);
std::string_view name_of(TermBinOp);
std::string_view name_of(Binder);
std::string_view name_of(IntervalKind);
std::string_view name_of(UnPred);
std::string_view name_of(BinPred);
std::string_view name_of(PropUnOp);
std::string_view name_of(PropBinOp);
std::string_view name_of(Quantifier);

bool is_order(BinPred p);  // = != < > <= >=

// ---------------------------------------------------------------------------
// Terms

struct TNum { Rational value; };
struct TInfty { InftySign sign; };
struct TConst { std::string name; };
struct TUnOpNode { TermUnOp op; TermPtr arg; };
struct TBinOpNode { TermBinOp op; TermPtr left, right; };
struct TApply { TermPtr fn, arg; };
struct TBinder { Binder binder; std::string var; TermPtr body; };
struct TVar { std::string name; };
struct TInterval { IntervalKind kind; TermPtr lo, hi; };
struct TSet { std::vector<std::string> vars; TermPtr element; PropPtr condition; };

struct Term {
  std::variant<TNum, TInfty, TConst, TUnOpNode, TBinOpNode, TApply, TBinder, TVar,
               TInterval, TSet>
      node;
};

// ---------------------------------------------------------------------------
// Propositions

struct PUnPred { UnPred pred; TermPtr arg; };
struct PBinPred { BinPred pred; TermPtr left, right; };
struct PCBinPred { BinPred pred; TermPtr left, right; std::vector<PropPtr> context; };
// terms.size() == orders.size() + 1, orders.size() >= 2.
struct PLongOrder { std::vector<BinPred> orders; std::vector<TermPtr> terms; };
struct PUnOpNode { PropUnOp op; PropPtr arg; };
struct PBinOpNode { PropBinOp op; PropPtr left, right; };
struct PQuant { Quantifier q; std::string var; PropPtr body; };
struct PBool { bool value; };

struct Prop {
  std::variant<PUnPred, PBinPred, PCBinPred, PLongOrder, PUnOpNode, PBinOpNode, PQuant, PBool>
      node;
};

// ---------------------------------------------------------------------------
// Proofs

struct AIntros { std::string var; };
struct AExists { TermPtr witness; };
struct ASuppose { PropPtr prop; };
struct ASet { std::string var; TermPtr value; };
struct ASetProp { PropPtr prop; };
struct AExistVar { std::string var; };
using Action = std::variant<AIntros, AExists, ASuppose, ASet, ASetProp, AExistVar>;

struct APoseVar { std::string var; std::vector<PropPtr> assumptions; };
struct APoseProp { PropPtr prop; };
using PoseAction = std::variant<APoseVar, APoseProp>;

struct FNoHint {};
struct FDefinition { std::string name; };
struct FTheorem { std::string name; };
struct FAddEqn { std::vector<std::string> labels; };
struct FDeriBothTerms { std::string var; };
using FwdMethod = std::variant<FNoHint, FDefinition, FTheorem, FAddEqn, FDeriBothTerms>;

enum class BwdMethod { BNoHint, BContra };

struct ProofAction { Action action; ProofPtr rest; };
struct PoseWithoutProof { FwdMethod method; PropPtr prop; ProofPtr rest; };
struct PoseAndProve { FwdMethod method; PropPtr prop; ProofPtr subproof; ProofPtr rest; };
struct ClaimSuffice { BwdMethod method; PropPtr prop; ProofPtr rest; };
struct ProveSuffice { BwdMethod method; PropPtr prop; ProofPtr subproof; ProofPtr rest; };
struct ConclWithoutProof { FwdMethod method; };
struct ConclAndProve { FwdMethod method; ProofPtr subproof; };
struct PosePartialProof { PoseAction pose; ProofPtr partial; ProofPtr rest; };
struct EndPartialProof {};

struct SourcePos {
  int line = 0;
  int column = 0;
  auto operator<=>(const SourcePos&) const = default;
};

struct Span {
  SourcePos start;
  SourcePos end;
  bool contains(const Span& other) const {
    return start <= other.start && other.end <= end;
  }
  bool operator==(const Span&) const = default;
};

struct ProofNode {
  std::variant<ProofAction, PoseWithoutProof, PoseAndProve, ClaimSuffice, ProveSuffice,
               ConclWithoutProof, ConclAndProve, PosePartialProof, EndPartialProof>
      node;
  Span span;
  std::string label;
  bool explicit_label = false;
};

// ---------------------------------------------------------------------------
// Proof goal

struct Premise {
  std::string label;
  PropPtr prop;
};

// `conclusion == nullptr` is the hole of a partial proof.
struct ProofGoal {
  std::vector<Premise> premises;
  PropPtr conclusion;

  bool is_hole() const { return conclusion == nullptr; }
};

// ---------------------------------------------------------------------------
// Construction helpers

namespace mk {
TermPtr num(Rational v);
TermPtr num(long long v);
TermPtr infty(InftySign s = InftySign::Positive);
TermPtr constant(std::string name);
TermPtr var(std::string name);
TermPtr unop(TermUnOp op, TermPtr arg);
TermPtr binop(TermBinOp op, TermPtr l, TermPtr r);
TermPtr apply(TermPtr fn, TermPtr arg);
TermPtr binder(Binder b, std::string v, TermPtr body);
TermPtr lambda(std::string v, TermPtr body);
TermPtr interval(IntervalKind k, TermPtr lo, TermPtr hi);
TermPtr set(std::vector<std::string> vars, TermPtr element, PropPtr cond);
// lim_{var -> point} body
TermPtr limit(TermPtr point, std::string var, TermPtr body);
TermPtr add(TermPtr l, TermPtr r);
TermPtr sub(TermPtr l, TermPtr r);
TermPtr mul(TermPtr l, TermPtr r);
TermPtr div(TermPtr l, TermPtr r);
TermPtr pow(TermPtr l, TermPtr r);
TermPtr neg(TermPtr t);

PropPtr unpred(UnPred p, TermPtr t);
PropPtr binpred(BinPred p, TermPtr l, TermPtr r);
PropPtr cbinpred(BinPred p, TermPtr l, TermPtr r, std::vector<PropPtr> ctx);
PropPtr long_order(std::vector<BinPred> orders, std::vector<TermPtr> terms);
PropPtr eq(TermPtr l, TermPtr r);
PropPtr lt(TermPtr l, TermPtr r);
PropPtr gt(TermPtr l, TermPtr r);
PropPtr le(TermPtr l, TermPtr r);
PropPtr ge(TermPtr l, TermPtr r);
PropPtr ne(TermPtr l, TermPtr r);
PropPtr negate(PropPtr p);
PropPtr binop(PropBinOp op, PropPtr l, PropPtr r);
PropPtr conj(PropPtr l, PropPtr r);
PropPtr disj(PropPtr l, PropPtr r);
PropPtr implies(PropPtr l, PropPtr r);
PropPtr iff(PropPtr l, PropPtr r);
PropPtr forall(std::string v, PropPtr body);
PropPtr exists(std::string v, PropPtr body);
PropPtr truth();
PropPtr falsity();
// Right-nested conjunction; empty list gives `true`.
PropPtr conj_all(const std::vector<PropPtr>& ps);

ProofPtr node(decltype(ProofNode::node) n, Span span = {}, std::string label = {},
              bool explicit_label = false);
}  // namespace mk

// Returns a copy of `node` with its `rest` continuation replaced (no-op for terminal nodes).
ProofPtr with_rest(const ProofPtr& node, ProofPtr rest);
// The continuation of a node, or null for terminal nodes.
ProofPtr rest_of(const ProofNode& node);

// Shape queries used throughout the checker and solvers.
const TVar* as_var(const TermPtr& t);
const TNum* as_num(const TermPtr& t);
const PBinPred* as_binpred(const PropPtr& p);
const PBinPred* as_eq(const PropPtr& p);
const PQuant* as_quant(const PropPtr& p, Quantifier q);
const PBinOpNode* as_binop(const PropPtr& p, PropBinOp op);
const PUnOpNode* as_not(const PropPtr& p);
bool is_false(const PropPtr& p);
bool is_true(const PropPtr& p);

}  // namespace naproof
