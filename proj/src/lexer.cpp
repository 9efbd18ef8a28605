#include "naproof/lexer.hpp"

#include "keywords_builtin.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace naproof {

std::string format_diagnostic(const ParseDiagnostic& d, const std::optional<std::string>& path) {
  std::ostringstream os;
  os << path.value_or("<input>") << ":" << d.span.start.line << ":" << d.span.start.column
     << ": error: " << d.message;
  if (!d.expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < d.expected.size(); ++i) os << (i ? ", " : "") << d.expected[i];
    os << ")";
  }
  return os.str();
}

namespace {

std::string lower(std::string s) {
  for (auto& c : s)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return s;
}

std::vector<std::string> split_words(const std::string& phrase) {
  std::istringstream is(phrase);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(lower(w));
  return out;
}

const char* symbol_name(TokKind k) {
  switch (k) {
    case TokKind::Eq: return "Eq";
    case TokKind::Ne: return "Ne";
    case TokKind::Lt: return "Lt";
    case TokKind::Gt: return "Gt";
    case TokKind::Le: return "Le";
    case TokKind::Ge: return "Ge";
    case TokKind::Plus: return "Plus";
    case TokKind::Minus: return "Minus";
    case TokKind::Star: return "Star";
    case TokKind::Slash: return "Slash";
    case TokKind::Caret: return "Caret";
    case TokKind::LParen: return "LParen";
    case TokKind::RParen: return "RParen";
    case TokKind::LBrack: return "LBrack";
    case TokKind::RBrack: return "RBrack";
    case TokKind::LBrace: return "LBrace";
    case TokKind::RBrace: return "RBrace";
    case TokKind::Comma: return "Comma";
    case TokKind::Period: return "Period";
    case TokKind::Semicolon: return "Semicolon";
    case TokKind::Colon: return "Colon";
    case TokKind::Bar: return "Bar";
    case TokKind::Arrow: return "Arrow";
    case TokKind::Prime: return "Prime";
    case TokKind::Underscore: return "Underscore";
    case TokKind::Newline: return "Newline";
    default: return "?";
  }
}

// UTF-8 decoding; malformed bytes decode to U+FFFD.
std::u32string decode(const std::string& s) {
  std::u32string out;
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    int len = c < 0x80 ? 1 : (c >> 5) == 6 ? 2 : (c >> 4) == 14 ? 3 : (c >> 3) == 30 ? 4 : 0;
    if (len == 0 || i + len > s.size()) {
      out.push_back(0xFFFD);
      ++i;
      continue;
    }
    char32_t cp = len == 1 ? c : c & (0x7F >> len);
    for (int k = 1; k < len; ++k) cp = (cp << 6) | (static_cast<unsigned char>(s[i + k]) & 0x3F);
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

const std::map<char32_t, const char*>& greek_names() {
  static const std::map<char32_t, const char*> m = {
      {U'α', "alpha"}, {U'β', "beta"},   {U'γ', "gamma"}, {U'δ', "delta"},   {U'ε', "epsilon"},
      {U'ϵ', "epsilon"}, {U'ζ', "zeta"}, {U'η', "eta"},   {U'θ', "theta"},   {U'κ', "kappa"},
      {U'λ', "lambda"}, {U'μ', "mu"},    {U'ν', "nu"},    {U'ξ', "xi"},      {U'π', "pi"},
      {U'ρ', "rho"},   {U'σ', "sigma"},  {U'τ', "tau"},   {U'φ', "phi"},     {U'χ', "chi"},
      {U'ψ', "psi"},   {U'ω', "omega"},
  };
  return m;
}

const std::map<char32_t, char>& subscript_chars() {
  static const std::map<char32_t, char> m = {
      {U'₀', '0'}, {U'₁', '1'}, {U'₂', '2'}, {U'₃', '3'}, {U'₄', '4'}, {U'₅', '5'},
      {U'₆', '6'}, {U'₇', '7'}, {U'₈', '8'}, {U'₉', '9'}, {U'ₙ', 'n'}, {U'ₖ', 'k'},
      {U'ᵢ', 'i'}, {U'ⱼ', 'j'}, {U'ₘ', 'm'}, {U'ₐ', 'a'}, {U'ₓ', 'x'}, {U'ₜ', 't'},
  };
  return m;
}

bool is_ascii_alpha(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool is_greek(char32_t c) { return greek_names().count(c) > 0; }
bool is_word_symbol(char32_t c) {
  return c == U'∀' || c == U'∃' || c == U'¬' || c == U'∈' || c == U'∞' || c == U'∧' ||
         c == U'∨' || c == U'⇒' || c == U'⇔';
}

std::string normalize_ident(const std::string& w) {
  if (w == "eps") return "epsilon";
  return w;
}

struct Raw {
  bool word = false;  // candidate for phrase matching
  Token tok;
};

}  // namespace

std::string describe(const Token& t) {
  switch (t.kind) {
    case TokKind::Ident: return "Ident " + t.text;
    case TokKind::Num: return "Num " + t.text;
    case TokKind::Subscript: return "Subscript " + t.text;
    case TokKind::Keyword: return "Kw" + t.text;
    default: return symbol_name(t.kind);
  }
}

KeywordTable KeywordTable::from_string(const std::string& tsv) {
  KeywordTable t;
  std::istringstream is(tsv);
  int lineno = 0;
  for (std::string line; std::getline(is, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos)
      throw std::runtime_error("keyword table line " + std::to_string(lineno) + ": missing tab");
    Entry e{line.substr(0, tab), split_words(line.substr(tab + 1))};
    if (e.construct.empty() || e.words.empty())
      throw std::runtime_error("keyword table line " + std::to_string(lineno) + ": empty field");
    t.entries_.push_back(std::move(e));
  }
  std::stable_sort(t.entries_.begin(), t.entries_.end(),
                   [](const Entry& a, const Entry& b) { return a.words.size() > b.words.size(); });
  return t;
}

KeywordTable KeywordTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open keyword table " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

const KeywordTable& KeywordTable::builtin() {
  static const KeywordTable t = from_string(kBuiltinKeywords);
  return t;
}

std::vector<std::string> KeywordTable::phrases_for(const std::string& construct) const {
  std::vector<std::string> out;
  for (const auto& e : entries_) {
    if (e.construct != construct) continue;
    std::string p;
    for (const auto& w : e.words) p += (p.empty() ? "" : " ") + w;
    out.push_back(p);
  }
  return out;
}

TokenizeResult tokenize(const SourceDocument& doc, const KeywordTable& table) {
  TokenizeResult result;
  const std::u32string s = decode(doc.text);
  std::vector<Raw> raw;
  int line = 1, col = 1;
  std::size_t i = 0;
  int depth = 0;  // () and [] nesting; newlines inside are not separators

  auto pos = [&] { return SourcePos{line, col}; };
  auto advance = [&] {
    if (s[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  };
  auto peek = [&](std::size_t k) -> char32_t { return i + k < s.size() ? s[i + k] : 0; };
  auto push = [&](TokKind k, std::string text, SourcePos start, bool word = false) {
    raw.push_back({word, Token{k, std::move(text), Span{start, pos()}}});
  };

  while (i < s.size()) {
    char32_t c = s[i];
    SourcePos start = pos();
    if (c == ' ' || c == '\t' || c == '\r') {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance();
      continue;
    }
    if (c == '\n') {
      advance();
      if (depth == 0 && !raw.empty() && raw.back().tok.kind != TokKind::Newline)
        push(TokKind::Newline, "", start);
      continue;
    }
    if (is_digit(c)) {
      std::string num;
      while (is_digit(peek(0))) {
        num += static_cast<char>(s[i]);
        advance();
      }
      if (peek(0) == '.' && is_digit(peek(1))) {
        num += '.';
        advance();
        while (is_digit(peek(0))) {
          num += static_cast<char>(s[i]);
          advance();
        }
      }
      push(TokKind::Num, num, start);
      continue;
    }
    if (is_ascii_alpha(c) || is_greek(c)) {
      std::string w;
      while (is_ascii_alpha(peek(0)) || is_digit(peek(0)) || is_greek(peek(0))) {
        auto g = greek_names().find(s[i]);
        w += g != greek_names().end() ? std::string(g->second) : encode(s[i]);
        advance();
      }
      push(TokKind::Ident, normalize_ident(w), start, true);
      continue;
    }
    if (is_word_symbol(c)) {
      advance();
      push(TokKind::Ident, encode(c), start, true);
      continue;
    }
    if (subscript_chars().count(c)) {
      std::string sub;
      while (subscript_chars().count(peek(0))) {
        sub += subscript_chars().at(s[i]);
        advance();
      }
      push(TokKind::Subscript, sub, start);
      continue;
    }
    if (c == U'²' || c == U'³') {
      advance();
      push(TokKind::Caret, "", start);
      push(TokKind::Num, c == U'²' ? "2" : "3", start);
      continue;
    }
    if (c == '_') {
      advance();
      if (is_ascii_alpha(peek(0)) || is_digit(peek(0)) || is_greek(peek(0))) {
        std::string sub;
        if (is_digit(peek(0))) {
          while (is_digit(peek(0))) {
            sub += static_cast<char>(s[i]);
            advance();
          }
        } else {
          while (is_ascii_alpha(peek(0)) || is_digit(peek(0)) || is_greek(peek(0))) {
            auto g = greek_names().find(s[i]);
            sub += g != greek_names().end() ? std::string(g->second) : encode(s[i]);
            advance();
          }
          sub = normalize_ident(sub);
        }
        push(TokKind::Subscript, sub, start);
      } else {
        push(TokKind::Underscore, "", start);
      }
      continue;
    }

    auto two = [&](char32_t a, char32_t b) { return c == a && peek(1) == b; };
    if (c == '<' && peek(1) == '=' && peek(2) == '>') {
      advance(), advance(), advance();
      push(TokKind::Keyword, "Iff", start);
      continue;
    }
    struct Sym {
      char32_t a, b;
      TokKind kind;
    };
    static const Sym twos[] = {
        {'!', '=', TokKind::Ne}, {'<', '=', TokKind::Le}, {'>', '=', TokKind::Ge},
        {'-', '>', TokKind::Arrow}, {'/', '=', TokKind::Ne},
    };
    bool matched = false;
    for (const auto& sym : twos) {
      if (two(sym.a, sym.b)) {
        advance(), advance();
        push(sym.kind, "", start);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (two('=', '>')) {
      advance(), advance();
      push(TokKind::Keyword, "Implies", start);
      continue;
    }

    std::optional<TokKind> k;
    switch (c) {
      case '=': k = TokKind::Eq; break;
      case U'≠': k = TokKind::Ne; break;
      case '<': k = TokKind::Lt; break;
      case '>': k = TokKind::Gt; break;
      case U'≤': k = TokKind::Le; break;
      case U'≥': k = TokKind::Ge; break;
      case '+': k = TokKind::Plus; break;
      case '-': case U'−': k = TokKind::Minus; break;
      case '*': case U'·': case U'×': k = TokKind::Star; break;
      case '/': k = TokKind::Slash; break;
      case '^': k = TokKind::Caret; break;
      case '(': k = TokKind::LParen; ++depth; break;
      case ')': k = TokKind::RParen; depth = std::max(0, depth - 1); break;
      case '[': k = TokKind::LBrack; ++depth; break;
      case ']': k = TokKind::RBrack; depth = std::max(0, depth - 1); break;
      case '{': k = TokKind::LBrace; break;
      case '}': k = TokKind::RBrace; break;
      case ',': k = TokKind::Comma; break;
      case '.': k = TokKind::Period; break;
      case ';': k = TokKind::Semicolon; break;
      case ':': k = TokKind::Colon; break;
      case '|': k = TokKind::Bar; break;
      case '\'': k = TokKind::Prime; break;
      case U'→': k = TokKind::Arrow; break;
      default: break;
    }
    advance();
    if (!k) {
      result.diagnostics.push_back(
          {Span{start, pos()}, "illegal character '" + encode(c) + "'", {}});
      continue;
    }
    push(*k, "", start);
  }
  while (!raw.empty() && raw.back().tok.kind == TokKind::Newline) raw.pop_back();

  // Merge word runs into keyword phrases, longest match first.
  for (std::size_t j = 0; j < raw.size();) {
    if (!raw[j].word) {
      result.tokens.push_back(raw[j].tok);
      ++j;
      continue;
    }
    const KeywordTable::Entry* hit = nullptr;
    for (const auto& e : table.entries()) {
      if (j + e.words.size() > raw.size()) continue;
      bool ok = true;
      for (std::size_t w = 0; w < e.words.size() && ok; ++w) {
        const auto& r = raw[j + w];
        ok = r.word && lower(r.tok.text) == e.words[w];
      }
      // Phrase words stay on one line.
      if (ok && e.words.size() > 1 &&
          raw[j + e.words.size() - 1].tok.span.end.line != raw[j].tok.span.start.line)
        ok = false;
      if (ok) {
        hit = &e;
        break;
      }
    }
    if (hit) {
      Span span{raw[j].tok.span.start, raw[j + hit->words.size() - 1].tok.span.end};
      result.tokens.push_back(Token{TokKind::Keyword, hit->construct, span});
      j += hit->words.size();
    } else {
      result.tokens.push_back(raw[j].tok);
      ++j;
    }
  }
  return result;
}

}  // namespace naproof
