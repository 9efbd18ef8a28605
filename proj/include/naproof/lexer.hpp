#pragma once

#include "naproof/ast.hpp"

#include <optional>
#include <string>
#include <vector>

namespace naproof {

struct SourceDocument {
  std::string text;
  std::optional<std::string> path;
};

struct ParseDiagnostic {
  Span span;
  std::string message;
  std::vector<std::string> expected;
};

std::string format_diagnostic(const ParseDiagnostic& d, const std::optional<std::string>& path = {});

enum class TokKind {
  Ident, Num, Subscript, Keyword,
  Eq, Ne, Lt, Gt, Le, Ge,
  Plus, Minus, Star, Slash, Caret,
  LParen, RParen, LBrack, RBrack, LBrace, RBrace,
  Comma, Period, Semicolon, Colon, Bar, Arrow, Prime, Underscore,
  Newline,
};

struct Token {
  TokKind kind;
  // Ident: normalized name; Num: decimal literal; Subscript: the index;
  // Keyword: construct name from the keyword table.
  std::string text;
  Span span;
};

// "KwSet", "Ident A", "Subscript n", "Eq", ...
std::string describe(const Token& t);

// Multi-word phrases mapped to constructs, matched case-insensitively.
class KeywordTable {
 public:
  struct Entry {
    std::string construct;
    std::vector<std::string> words;
  };

  // The table compiled in from data/keywords.tsv.
  static const KeywordTable& builtin();
  static KeywordTable from_string(const std::string& tsv);
  static KeywordTable load(const std::string& path);

  const std::vector<Entry>& entries() const { return entries_; }
  std::vector<std::string> phrases_for(const std::string& construct) const;

 private:
  std::vector<Entry> entries_;  // longest phrases first
};

struct TokenizeResult {
  std::vector<Token> tokens;
  std::vector<ParseDiagnostic> diagnostics;
  bool ok() const { return diagnostics.empty(); }
};

TokenizeResult tokenize(const SourceDocument& doc,
                        const KeywordTable& table = KeywordTable::builtin());

}  // namespace naproof
