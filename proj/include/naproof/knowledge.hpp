#pragma once

#include "naproof/ast.hpp"
#include "naproof/ast_ops.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace naproof {

struct Registry;

// Metavariable bindings. Only term metavariables exist; proposition placeholders are
// not part of the library language.
struct Substitution {
  std::map<std::string, TermPtr> terms;
  bool operator==(const Substitution&) const = default;
};

// First-order matching, extended with the pattern fragment: a metavariable applied to a
// pattern-bound variable, `a_n` under a binder for n, binds `a` to a function of n.
std::optional<Substitution> match_pattern(const PropPtr& pattern, const PropPtr& target,
                                          const VarSet& metavars, Substitution partial = {});
std::optional<Substitution> match_term(const TermPtr& pattern, const TermPtr& target,
                                       const VarSet& metavars, Substitution partial = {});

// Simultaneous substitution of the bindings followed by beta reduction.
PropPtr instantiate(const PropPtr& pattern, const Substitution& s);
TermPtr instantiate(const TermPtr& pattern, const Substitution& s);

enum class KnowledgeKind { Theorem, Definition };

struct TheoremEntry {
  std::string name;
  KnowledgeKind kind = KnowledgeKind::Theorem;
  std::vector<std::string> metavars;
  std::vector<PropPtr> premises;
  PropPtr conclusion;
  bool enabled = true;
  int line = 0;

  VarSet metavar_set() const { return VarSet(metavars.begin(), metavars.end()); }
};

struct LibraryError : std::runtime_error {
  int line;
  LibraryError(const std::string& source, int line, const std::string& msg);
};

class Library {
 public:
  void add(TheoremEntry e);  // throws LibraryError on duplicates
  void merge(const Library& other);
  // Returns false when no entry has that name.
  bool disable(const std::string& name);
  // Disabled entries are invisible.
  const TheoremEntry* find(const std::string& name) const;
  const TheoremEntry* find_any(const std::string& name) const;
  const std::vector<TheoremEntry>& entries() const { return entries_; }

 private:
  std::vector<TheoremEntry> entries_;
};

Library parse_library(const std::string& text, const std::string& source = "<library>");
Library load_library(const std::string& path);
// The library shipped with the tool (data/core.nfl, embedded at build time).
Library core_library();

struct SolverAccess {
  const Registry* registry = nullptr;
  int budget = 0;  // prerequisite escalation runs with budget / 2
};

struct ApplyResult {
  bool accepted = false;
  bool applicable = false;  // false: the method does not fit the claim at all
  std::string message;
};

// Theorems are used conclusion-first. Definitions also fold the same way; a
// single-premise definition additionally unfolds: the claim matches the premise and the
// instantiated conclusion must be known.
ApplyResult apply_theorem(const TheoremEntry& thm, const PropPtr& claimed, const ProofGoal& goal,
                          const SolverAccess& solvers);

// Index of an alpha-equal premise (whole premise or one of its conjuncts), newest first.
int find_known(const ProofGoal& goal, const PropPtr& p);

}  // namespace naproof
