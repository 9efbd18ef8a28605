#include "naproof/knowledge.hpp"

#include "naproof/analyzer.hpp"
#include "naproof/parser.hpp"
#include "naproof/printer.hpp"
#include "naproof/solvers.hpp"

#include "core_library_builtin.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <fstream>
#include <sstream>

namespace naproof {

// ---- matching -------------------------------------------------------------------

namespace {

class Matcher {
 public:
  Matcher(const VarSet& meta, Substitution s) : meta_(meta), s_(std::move(s)) {}

  Substitution result() const { return s_; }

  bool term(const TermPtr& p, const TermPtr& t) {
    if (auto v = std::get_if<TVar>(&p->node)) return var(v->name, t);
    if (auto app = std::get_if<TApply>(&p->node)) {
      auto head = std::get_if<TVar>(&app->fn->node);
      if (head && is_meta(head->name)) return meta_apply(head->name, app->arg, t);
    }
    if (p->node.index() != t->node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
          using N = std::decay_t<decltype(x)>;
          const auto& y = std::get<N>(t->node);
          if constexpr (std::is_same_v<N, TNum>) {
            return x.value == y.value;
          } else if constexpr (std::is_same_v<N, TInfty>) {
            return x.sign == y.sign;
          } else if constexpr (std::is_same_v<N, TConst>) {
            return x.name == y.name;
          } else if constexpr (std::is_same_v<N, TUnOpNode>) {
            return x.op == y.op && term(x.arg, y.arg);
          } else if constexpr (std::is_same_v<N, TBinOpNode>) {
            return x.op == y.op && term(x.left, y.left) && term(x.right, y.right);
          } else if constexpr (std::is_same_v<N, TApply>) {
            return term(x.fn, y.fn) && term(x.arg, y.arg);
          } else if constexpr (std::is_same_v<N, TBinder>) {
            if (x.binder != y.binder) return false;
            bound_.emplace_back(x.var, y.var);
            bool ok = term(x.body, y.body);
            bound_.pop_back();
            return ok;
          } else if constexpr (std::is_same_v<N, TInterval>) {
            return x.kind == y.kind && term(x.lo, y.lo) && term(x.hi, y.hi);
          } else if constexpr (std::is_same_v<N, TSet>) {
            if (x.vars.size() != y.vars.size()) return false;
            for (std::size_t i = 0; i < x.vars.size(); ++i) bound_.emplace_back(x.vars[i], y.vars[i]);
            bool ok = term(x.element, y.element) && prop(x.condition, y.condition);
            bound_.resize(bound_.size() - x.vars.size());
            return ok;
          } else {
            return false;
          }
        },
        p->node);
  }

  bool prop(const PropPtr& p, const PropPtr& t) {
    PropPtr a = p, b = t;
    if (std::holds_alternative<PLongOrder>(a->node) != std::holds_alternative<PLongOrder>(b->node)) {
      a = desugar(a);
      b = desugar(b);
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
            return x.op == y.op && prop(x.arg, y.arg);
          } else if constexpr (std::is_same_v<N, PBinOpNode>) {
            return x.op == y.op && prop(x.left, y.left) && prop(x.right, y.right);
          } else if constexpr (std::is_same_v<N, PQuant>) {
            if (x.q != y.q) return false;
            bound_.emplace_back(x.var, y.var);
            bool ok = prop(x.body, y.body);
            bound_.pop_back();
            return ok;
          } else if constexpr (std::is_same_v<N, PBool>) {
            return x.value == y.value;
          } else {
            return false;
          }
        },
        a->node);
  }

 private:
  const VarSet& meta_;
  Substitution s_;
  std::vector<std::pair<std::string, std::string>> bound_;  // pattern name, target name

  std::optional<std::string> pattern_bound(const std::string& v) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->first == v) return it->second;
    return std::nullopt;
  }

  std::optional<std::string> target_bound(const std::string& v) const {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (it->second == v) return it->first;
    return std::nullopt;
  }

  bool is_meta(const std::string& v) const { return meta_.count(v) && !pattern_bound(v); }

  // A binding may not mention variables bound inside the pattern match.
  bool escapes(const TermPtr& t, const std::string& allowed = {}) const {
    for (const auto& v : free_vars(t))
      if (v != allowed && target_bound(v)) return true;
    return false;
  }

  bool bind(const std::string& m, const TermPtr& t) {
    auto it = s_.terms.find(m);
    if (it != s_.terms.end()) return alpha_equal(it->second, t);
    s_.terms[m] = t;
    return true;
  }

  bool var(const std::string& name, const TermPtr& t) {
    if (auto mapped = pattern_bound(name)) {
      auto tv = std::get_if<TVar>(&t->node);
      return tv && tv->name == *mapped && target_bound(tv->name) == name;
    }
    if (meta_.count(name)) {
      if (escapes(t)) return false;
      return bind(name, t);
    }
    auto tv = std::get_if<TVar>(&t->node);
    return tv && tv->name == name && !target_bound(name);
  }

  bool meta_apply(const std::string& m, const TermPtr& arg, const TermPtr& t) {
    auto av = std::get_if<TVar>(&arg->node);
    auto mapped = av ? pattern_bound(av->name) : std::nullopt;
    if (mapped) {
      auto it = s_.terms.find(m);
      if (it != s_.terms.end())
        return alpha_equal(beta_reduce(mk::apply(it->second, mk::var(*mapped))), t);
      if (auto app = std::get_if<TApply>(&t->node)) {
        auto tv = std::get_if<TVar>(&app->arg->node);
        if (tv && tv->name == *mapped && !occurs_free(*mapped, app->fn) && !escapes(app->fn))
          return bind(m, app->fn);
      }
      if (escapes(t, *mapped)) return false;
      return bind(m, mk::lambda(*mapped, t));
    }
    if (auto app = std::get_if<TApply>(&t->node)) {
      Substitution saved = s_;
      if (var(m, app->fn) && term(arg, app->arg)) return true;
      s_ = saved;
    }
    auto it = s_.terms.find(m);
    if (it == s_.terms.end()) return false;
    for (const auto& v : free_vars(arg))
      if (pattern_bound(v) || (meta_.count(v) && !s_.terms.count(v))) return false;
    return alpha_equal(beta_reduce(mk::apply(it->second, instantiate(arg, s_))), t);
  }
};

template <class T>
T instantiate_impl(const T& pattern, const Substitution& s) {
  T out = pattern;
  for (const auto& [m, t] : s.terms) out = substitute(out, m, mk::var("?" + m));
  for (const auto& [m, t] : s.terms) out = substitute(out, "?" + m, t);
  return beta_reduce(out);
}

}  // namespace

std::optional<Substitution> match_pattern(const PropPtr& pattern, const PropPtr& target,
                                          const VarSet& metavars, Substitution partial) {
  Matcher m(metavars, std::move(partial));
  if (!m.prop(pattern, target)) return std::nullopt;
  return m.result();
}

std::optional<Substitution> match_term(const TermPtr& pattern, const TermPtr& target,
                                       const VarSet& metavars, Substitution partial) {
  Matcher m(metavars, std::move(partial));
  if (!m.term(pattern, target)) return std::nullopt;
  return m.result();
}

PropPtr instantiate(const PropPtr& pattern, const Substitution& s) {
  return instantiate_impl(pattern, s);
}

TermPtr instantiate(const TermPtr& pattern, const Substitution& s) {
  return instantiate_impl(pattern, s);
}

// ---- library --------------------------------------------------------------------

LibraryError::LibraryError(const std::string& source, int line_, const std::string& msg)
    : std::runtime_error(source + ":" + std::to_string(line_) + ": error: " + msg), line(line_) {}

void Library::add(TheoremEntry e) {
  if (find_any(e.name))
    throw LibraryError("<library>", e.line, "duplicate knowledge name " + e.name);
  entries_.push_back(std::move(e));
}

void Library::merge(const Library& other) {
  for (const auto& e : other.entries()) add(e);
}

bool Library::disable(const std::string& name) {
  bool found = false;
  for (auto& e : entries_)
    if (e.name == name) {
      e.enabled = false;
      found = true;
    }
  return found;
}

const TheoremEntry* Library::find(const std::string& name) const {
  auto e = find_any(name);
  return e && e->enabled ? e : nullptr;
}

const TheoremEntry* Library::find_any(const std::string& name) const {
  for (const auto& e : entries_)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

void validate(const TheoremEntry& e, const std::string& source) {
  if (!e.conclusion) throw LibraryError(source, e.line, e.name + " has no conclusion");
  VarSet in_concl = free_vars(e.conclusion);
  VarSet seen;
  for (const auto& m : e.metavars) {
    if (!seen.insert(m).second)
      throw LibraryError(source, e.line, e.name + " lists variable " + m + " twice");
    bool used = in_concl.count(m) > 0;
    for (const auto& p : e.premises) used = used || free_vars(p).count(m);
    if (!used) throw LibraryError(source, e.line, e.name + " never uses variable " + m);
  }
}

}  // namespace

Library parse_library(const std::string& text, const std::string& source) {
  Library lib;
  std::optional<TheoremEntry> cur;
  auto finish = [&] {
    if (!cur) return;
    validate(*cur, source);
    try {
      lib.add(std::move(*cur));
    } catch (const LibraryError&) {
      throw LibraryError(source, cur->line, "duplicate knowledge name " + cur->name);
    }
    cur.reset();
  };
  auto parse = [&](const std::string& body, int line) {
    auto r = parse_prop(body);
    if (!r.ok()) {
      std::string msg = "malformed proposition";
      if (!r.diagnostics.empty()) msg += ": " + r.diagnostics.front().message;
      throw LibraryError(source, line, msg);
    }
    ScopeEnv env;
    env.goal_vars = cur->metavar_set();
    return hon(*r.value, env);
  };

  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto s = trim(raw);
    if (!s.empty() && s[0] == '#') continue;
    if (s.empty()) {
      finish();
      continue;
    }
    auto sp = s.find(' ');
    auto head = s.substr(0, sp);
    if (head == "theorem" || head == "definition") {
      if (cur) throw LibraryError(source, line, "missing blank line before " + head);
      auto name = sp == std::string::npos ? "" : trim(s.substr(sp));
      if (!valid_name(name)) throw LibraryError(source, line, "invalid knowledge name '" + name + "'");
      cur = TheoremEntry{};
      cur->name = name;
      cur->kind = head == "theorem" ? KnowledgeKind::Theorem : KnowledgeKind::Definition;
      cur->line = line;
      continue;
    }
    if (!cur) throw LibraryError(source, line, "expected 'theorem <Name>' or 'definition <Name>'");
    auto colon = s.find(':');
    if (colon == std::string::npos) throw LibraryError(source, line, "expected 'key: value'");
    auto key = trim(s.substr(0, colon));
    auto value = trim(s.substr(colon + 1));
    if (key == "vars") {
      if (!cur->metavars.empty() || !cur->premises.empty() || cur->conclusion)
        throw LibraryError(source, line, "'vars' must come first");
      std::stringstream vs(value);
      std::string v;
      while (std::getline(vs, v, ',')) {
        v = trim(v);
        if (!valid_name(v)) throw LibraryError(source, line, "invalid variable name '" + v + "'");
        cur->metavars.push_back(v);
      }
    } else if (key == "premise") {
      if (cur->conclusion) throw LibraryError(source, line, "premise after conclusion");
      cur->premises.push_back(parse(value, line));
    } else if (key == "conclusion") {
      if (cur->conclusion) throw LibraryError(source, line, "second conclusion");
      cur->conclusion = parse(value, line);
    } else {
      throw LibraryError(source, line, "unknown key '" + key + "'");
    }
  }
  finish();
  return lib;
}

Library load_library(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LibraryError(path, 0, "cannot read library file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_library(ss.str(), path);
}

Library core_library() {
  static const Library lib = parse_library(kBuiltinCoreLibrary, "core.nfl");
  return lib;
}

// ---- application ----------------------------------------------------------------

int find_known(const ProofGoal& goal, const PropPtr& p) {
  for (int i = static_cast<int>(goal.premises.size()) - 1; i >= 0; --i) {
    const auto& q = goal.premises[static_cast<std::size_t>(i)].prop;
    if (alpha_equal(q, p)) return i;
    for (const auto& c : conjuncts(q))
      if (alpha_equal(c, p)) return i;
  }
  return -1;
}

namespace {

std::string kind_word(const TheoremEntry& t) {
  return t.kind == KnowledgeKind::Theorem ? "theorem" : "definition";
}

bool established(const PropPtr& p, const ProofGoal& goal, const SolverAccess& solvers) {
  if (find_known(goal, p) >= 0) return true;
  if (!solvers.registry) return false;
  return solver_manager(solvers.budget / 2, *solvers.registry, goal, p).accepted;
}

}  // namespace

ApplyResult apply_theorem(const TheoremEntry& thm, const PropPtr& claimed, const ProofGoal& goal,
                          const SolverAccess& solvers) {
  ApplyResult r;
  const auto what = kind_word(thm) + " " + thm.name;
  if (!thm.enabled) {
    r.message = kind_word(thm) + " disabled: " + thm.name;
    return r;
  }
  auto meta = thm.metavar_set();
  if (auto s = match_pattern(thm.conclusion, claimed, meta)) {
    r.applicable = true;
    // Metavariables absent from the conclusion are bound by matching premises of the goal.
    std::vector<PropPtr> facts;
    for (auto it = goal.premises.rbegin(); it != goal.premises.rend(); ++it)
      for (const auto& c : conjuncts(it->prop)) facts.push_back(c);
    std::optional<PropPtr> first_failure;
    std::function<bool(std::size_t, const Substitution&)> discharge = [&](std::size_t i,
                                                                          const Substitution& sub) {
      if (i == thm.premises.size()) return true;
      const auto& prem = thm.premises[i];
      bool open = false;
      for (const auto& v : free_vars(prem))
        if (meta.count(v) && !sub.terms.count(v)) open = true;
      if (!open) {
        auto inst = instantiate(prem, sub);
        if (established(inst, goal, solvers)) return discharge(i + 1, sub);
        if (!first_failure) first_failure = inst;
        return false;
      }
      for (const auto& f : facts)
        if (auto m = match_pattern(prem, f, meta, sub); m && discharge(i + 1, *m)) return true;
      if (!first_failure) first_failure = prem;
      return false;
    };
    if (!discharge(0, *s)) {
      r.message = "prerequisite of " + what + " not established: " + pretty_print(*first_failure);
      return r;
    }
    r.accepted = true;
    r.message = "by " + what;
    return r;
  }
  if (thm.kind == KnowledgeKind::Definition && thm.premises.size() == 1) {
    if (auto s = match_pattern(thm.premises.front(), claimed, meta)) {
      r.applicable = true;
      bool complete = std::all_of(thm.metavars.begin(), thm.metavars.end(),
                                  [&](const auto& m) { return s->terms.count(m) > 0; });
      auto inst = instantiate(thm.conclusion, *s);
      if (!complete || !established(inst, goal, solvers)) {
        r.message = "unfolding " + what + " needs " + pretty_print(inst);
        return r;
      }
      r.accepted = true;
      r.message = "by unfolding " + what;
      return r;
    }
  }
  r.message = "the proposition does not match the conclusion of " + what;
  return r;
}

}  // namespace naproof
