#pragma once

#include "naproof/analyzer.hpp"
#include "naproof/checker.hpp"
#include "naproof/parser.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testutil {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus(const std::string& name) { return std::string(NAPROOF_CORPUS_DIR) + "/" + name; }
inline std::string golden(const std::string& name) { return std::string(NAPROOF_GOLDEN_DIR) + "/" + name; }

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(NAPROOF_CORPUS_DIR))
    if (e.path().extension() == ".nfp") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline naproof::Document document(const std::string& text, const std::string& name = "t.nfp") {
  auto d = naproof::parse_document(naproof::SourceDocument{text, name});
  if (!d.ok()) throw std::runtime_error("parse failed: " + name);
  return *d.value;
}

inline naproof::CheckReport check_text(const std::string& text, const naproof::CheckerConfig& cfg) {
  auto d = document(text);
  return naproof::check(naproof::analyze(d.proof, d.theorem), cfg);
}

// Replaces the first occurrence; throws if absent so a stale mutation cannot pass silently.
inline std::string replace_once(std::string s, const std::string& from, const std::string& to) {
  auto at = s.find(from);
  if (at == std::string::npos) throw std::runtime_error("mutation anchor not found: " + from);
  return s.replace(at, from.size(), to);
}

}  // namespace testutil
