#pragma once

#include "naproof/ast.hpp"
#include "naproof/lexer.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace naproof {

template <class T>
struct ParseResult {
  std::optional<T> value;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return value.has_value() && diagnostics.empty(); }
};

// A `.nfp` file: "Theorem: <prop>" followed by "Proof:" and the proof text.
struct Document {
  PropPtr theorem;
  ProofPtr proof;
};

ParseResult<ProofPtr> parse_proof(const SourceDocument& doc,
                                  const KeywordTable& table = KeywordTable::builtin());
ParseResult<PropPtr> parse_prop(const std::string& text,
                                const KeywordTable& table = KeywordTable::builtin());
ParseResult<TermPtr> parse_term(const std::string& text,
                                const KeywordTable& table = KeywordTable::builtin());
ParseResult<Document> parse_document(const SourceDocument& doc,
                                     const KeywordTable& table = KeywordTable::builtin());

struct ParseError : std::runtime_error {
  std::vector<ParseDiagnostic> diagnostics;
  explicit ParseError(std::vector<ParseDiagnostic> ds);
};

// Throwing shorthands for tests and library loading.
PropPtr prop_of(const std::string& text);
TermPtr term_of(const std::string& text);
ProofPtr proof_of(const std::string& text);

}  // namespace naproof
