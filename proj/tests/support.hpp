#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "incgram/incgram.hpp"

namespace testing {

inline std::filesystem::path data_path(const std::string& rel) {
  return std::filesystem::path(INCGRAM_DATA_DIR) / rel;
}

inline incgram::GrammarPtr grammar(const std::string& name) {
  return incgram::load_grammar_file(data_path("grammars/" + name));
}

inline std::string read(const std::string& rel) {
  std::ifstream in(data_path(rel));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline incgram::CorpusModel corpus(const incgram::GrammarPtr& g, const std::string& name) {
  return incgram::CorpusModel::from_json(g, read("corpora/" + name));
}

inline std::vector<std::string> words(const std::string& s) { return incgram::split_words(s); }

/// Applies the first applicable generator whose name is `name`.
inline incgram::ParseState apply_named(const incgram::GrammarSpec& g, const incgram::ParseState& p,
                                       const std::string& name, std::size_t position) {
  return incgram::apply_generator(g, p, *g.signature().find_arrow(name), position);
}

inline std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

inline incgram::ParseState bare(const incgram::GrammarSpec& g, const std::string& sentence) {
  auto w = words(sentence);
  auto ids = g.words(w);
  return incgram::bare_state(g, ids);
}

inline std::vector<std::string> codomain_names(const incgram::GrammarSpec& g,
                                               const incgram::ParseState& p) {
  std::vector<std::string> out;
  for (auto id : p.codomain()) out.push_back(g.signature().object_name(id));
  return out;
}

}  // namespace testing
