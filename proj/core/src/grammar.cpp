#include "incgram/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "incgram/error.hpp"

namespace incgram {

std::string_view to_string(GrammarMode mode) noexcept {
  return mode == GrammarMode::cfg ? "cfg" : "pregroup";
}

std::string PregroupType::name() const {
  if (adjoint == 0) return base;
  return base + "^" + std::string(static_cast<std::size_t>(std::abs(adjoint)), adjoint > 0 ? 'r' : 'l');
}

PregroupType parse_pregroup_type(std::string_view text) {
  auto caret = text.find('^');
  PregroupType t;
  t.base = std::string(text.substr(0, caret));
  if (t.base.empty()) throw GrammarError("empty type in '" + std::string(text) + "'");
  if (caret == std::string_view::npos) return t;
  std::string_view suffix = text.substr(caret + 1);
  if (suffix.empty()) throw GrammarError("missing adjoint after '^' in '" + std::string(text) + "'");
  char c = suffix.front();
  if ((c != 'l' && c != 'r') ||
      !std::all_of(suffix.begin(), suffix.end(), [c](char x) { return x == c; })) {
    throw GrammarError("bad adjoint '" + std::string(suffix) + "' (expected l, ll, r, rr, ...)");
  }
  t.adjoint = static_cast<int>(suffix.size()) * (c == 'r' ? 1 : -1);
  return t;
}

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    if (j > i) out.emplace_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

namespace {

constexpr std::string_view kReserved = "():,|@^#";

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

void check_symbol(const std::string& sym, int line, bool allow_caret = false) {
  for (char c : sym) {
    if (c == '^' && allow_caret) continue;
    if (kReserved.find(c) != std::string_view::npos) {
      throw GrammarError("symbol '" + sym + "' contains reserved character '" + c + "'", line);
    }
  }
}

double parse_weight(const std::string& text, int line) {
  if (text == "true") return 1.0;
  if (text == "false") return 0.0;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw GrammarError("bad weight '" + text + "'", line);
  }
  return v;
}

/// Splits "body @ weight" into body and optional weight.
std::pair<std::string, std::optional<double>> split_weight(const std::string& rest, int line) {
  auto at = rest.rfind('@');
  if (at == std::string::npos) return {rest, std::nullopt};
  std::string w = trim(std::string_view(rest).substr(at + 1));
  if (w.empty()) throw GrammarError("missing weight after '@'", line);
  return {trim(std::string_view(rest).substr(0, at)), parse_weight(w, line)};
}

}  // namespace

GrammarDecl parse_grammar_decl(std::string_view text) {
  GrammarDecl decl;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    auto colon = line.find(':');
    if (colon == std::string::npos) throw GrammarError("expected 'key: value'", line_no);
    std::string key = trim(std::string_view(line).substr(0, colon));
    std::string rest = trim(std::string_view(line).substr(colon + 1));

    if (key == "mode") {
      if (rest == "cfg") decl.mode = GrammarMode::cfg;
      else if (rest == "pregroup") decl.mode = GrammarMode::pregroup;
      else throw GrammarError("unknown mode '" + rest + "'", line_no);
    } else if (key == "semiring") {
      try {
        decl.semiring = parse_semiring(rest);
      } catch (const Error& e) {
        throw GrammarError(e.what(), line_no);
      }
    } else if (key == "start") {
      if (rest.empty() || split_words(rest).size() != 1) {
        throw GrammarError("start needs exactly one symbol", line_no);
      }
      check_symbol(rest, line_no);
      decl.start = rest;
    } else if (key == "adjoint-bound") {
      int bound = 0;
      auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), bound);
      if (ec != std::errc() || ptr != rest.data() + rest.size() || bound < 1) {
        throw GrammarError("adjoint-bound must be a positive integer", line_no);
      }
      decl.adjoint_bound = bound;
    } else if (key == "vocab" || key == "nonterminals" || key == "types") {
      auto syms = split_words(rest);
      for (const auto& s : syms) check_symbol(s, line_no);
      auto& slot = key == "vocab" ? decl.vocab : key == "nonterminals" ? decl.nonterminals : decl.types;
      if (!slot) slot.emplace();
      slot->insert(slot->end(), syms.begin(), syms.end());
    } else if (key == "rule") {
      auto [body, weight] = split_weight(rest, line_no);
      auto arrow = body.find("->");
      if (arrow == std::string::npos) throw GrammarError("rule needs '->'", line_no);
      auto lhs = split_words(std::string_view(body).substr(0, arrow));
      if (lhs.size() != 1) throw GrammarError("rule needs exactly one left-hand symbol", line_no);
      RuleDecl r{lhs.front(), split_words(std::string_view(body).substr(arrow + 2)), weight, line_no};
      check_symbol(r.lhs, line_no);
      for (const auto& s : r.rhs) check_symbol(s, line_no);
      decl.rules.push_back(std::move(r));
    } else if (key == "word") {
      auto [body, weight] = split_weight(rest, line_no);
      auto sep = body.find(':');
      if (sep == std::string::npos) throw GrammarError("word entry needs 'word : type...'", line_no);
      auto word = split_words(std::string_view(body).substr(0, sep));
      if (word.size() != 1) throw GrammarError("word entry needs exactly one word", line_no);
      check_symbol(word.front(), line_no);
      LexiconDecl e{word.front(), {}, weight, line_no};
      for (const auto& term : split_words(std::string_view(body).substr(sep + 1))) {
        try {
          e.type.push_back(parse_pregroup_type(term));
        } catch (const GrammarError& err) {
          throw GrammarError(err.what(), line_no);
        }
        check_symbol(e.type.back().base, line_no);
      }
      if (e.type.empty()) throw GrammarError("word '" + e.word + "' has an empty type", line_no);
      decl.lexicon.push_back(std::move(e));
    } else if (key == "cup") {
      auto [body, weight] = split_weight(rest, line_no);
      auto terms = split_words(body);
      if (terms.size() != 1) throw GrammarError("cup needs exactly one type", line_no);
      CupDecl c;
      try {
        c.left = parse_pregroup_type(terms.front());
      } catch (const GrammarError& err) {
        throw GrammarError(err.what(), line_no);
      }
      c.weight = weight.value_or(1.0);
      c.line = line_no;
      decl.cups.push_back(std::move(c));
    } else {
      throw GrammarError("unknown key '" + key + "'", line_no);
    }
  }
  return decl;
}

namespace {

std::vector<std::string> sorted_unique(std::set<std::string> s) { return {s.begin(), s.end()}; }

}  // namespace

GrammarSpec GrammarSpec::build(GrammarDecl decl) {
  GrammarSpec g;
  if (!decl.mode) throw GrammarError("missing 'mode:' line");
  if (!decl.start) throw GrammarError("missing 'start:' line");
  g.mode_ = *decl.mode;
  g.semiring_ = decl.semiring.value_or(SemiringKind::boolean);
  g.start_ = *decl.start;
  g.adjoint_bound_ = decl.adjoint_bound;

  if (decl.vocab &&
      std::find(decl.vocab->begin(), decl.vocab->end(), g.start_) != decl.vocab->end()) {
    throw GrammarError("start symbol '" + g.start_ + "' is also declared as a word");
  }

  auto finish_weights = [&g] {
    g.declared_weights_.assign(g.signature_.arrow_count(), std::nullopt);
    g.object_types_.resize(g.signature_.object_count());
  };

  if (g.mode_ == GrammarMode::cfg) {
    if (!decl.lexicon.empty()) throw GrammarError("'word:' lines are only valid in pregroup mode", decl.lexicon.front().line);
    if (!decl.cups.empty()) throw GrammarError("'cup:' lines are only valid in pregroup mode", decl.cups.front().line);
    if (decl.types) throw GrammarError("'types:' is only valid in pregroup mode");

    std::set<std::string> nts;
    if (decl.nonterminals) {
      nts.insert(decl.nonterminals->begin(), decl.nonterminals->end());
      if (!nts.contains(g.start_)) throw GrammarError("start symbol '" + g.start_ + "' is not a declared nonterminal");
    } else {
      nts.insert(g.start_);
      for (const auto& r : decl.rules) nts.insert(r.lhs);
    }
    std::set<std::string> words;
    if (decl.vocab) words.insert(decl.vocab->begin(), decl.vocab->end());
    for (const auto& w : words) {
      if (nts.contains(w)) throw GrammarError("'" + w + "' is both a word and a nonterminal");
    }
    for (const auto& r : decl.rules) {
      if (!nts.contains(r.lhs)) throw GrammarError("undeclared nonterminal '" + r.lhs + "'", r.line);
      if (r.rhs.empty()) throw GrammarError("empty right-hand side (epsilon rules are not supported)", r.line);
      for (const auto& s : r.rhs) {
        if (nts.contains(s)) continue;
        if (decl.vocab) {
          if (!words.contains(s)) throw GrammarError("undeclared symbol '" + s + "'", r.line);
        } else {
          words.insert(s);
        }
      }
    }
    g.vocabulary_ = sorted_unique(words);
    g.nonterminals_ = sorted_unique(nts);
    for (const auto& w : g.vocabulary_) g.signature_.add_object(w, SymbolKind::word);
    for (const auto& x : g.nonterminals_) g.signature_.add_object(x, SymbolKind::nonterminal);
    g.start_object_ = *g.signature_.find_object(g.start_);

    std::set<std::pair<std::string, std::vector<std::string>>> seen;
    std::vector<std::optional<double>> weights;
    for (const auto& r : decl.rules) {
      if (!seen.emplace(r.lhs, r.rhs).second) throw GrammarError("duplicate rule", r.line);
      Generator gen;
      gen.kind = GeneratorKind::rule;
      gen.name = r.lhs + " ->";
      for (const auto& s : r.rhs) {
        gen.name += " " + s;
        gen.dom.push_back(*g.signature_.find_object(s));
      }
      gen.cod = {*g.signature_.find_object(r.lhs)};
      g.signature_.add_arrow(std::move(gen));
      weights.push_back(r.weight);
    }
    g.rules_ = std::move(decl.rules);
    finish_weights();
    g.declared_weights_ = std::move(weights);
    return g;
  }

  // pregroup
  if (!decl.rules.empty()) throw GrammarError("'rule:' lines are only valid in cfg mode", decl.rules.front().line);
  if (decl.nonterminals) throw GrammarError("'nonterminals:' is only valid in cfg mode");

  std::set<std::string> bases;
  if (decl.types) {
    bases.insert(decl.types->begin(), decl.types->end());
    if (!bases.contains(g.start_)) throw GrammarError("start type '" + g.start_ + "' is not declared");
  } else {
    bases.insert(g.start_);
    for (const auto& e : decl.lexicon) {
      for (const auto& t : e.type) bases.insert(t.base);
    }
  }
  std::set<std::string> words;
  if (decl.vocab) words.insert(decl.vocab->begin(), decl.vocab->end());
  for (const auto& e : decl.lexicon) {
    if (decl.vocab && !words.contains(e.word)) throw GrammarError("undeclared word '" + e.word + "'", e.line);
    words.insert(e.word);
    for (const auto& t : e.type) {
      if (!bases.contains(t.base)) throw GrammarError("undeclared type '" + t.base + "'", e.line);
      if (std::abs(t.adjoint) > g.adjoint_bound_) {
        throw GrammarError("type '" + t.name() + "' exceeds the adjoint bound", e.line);
      }
    }
  }
  if (words.contains(g.start_)) throw GrammarError("start symbol '" + g.start_ + "' is also a word");
  for (const auto& w : words) {
    if (bases.contains(w)) throw GrammarError("'" + w + "' is both a word and a basic type");
  }
  g.vocabulary_ = sorted_unique(words);
  g.basic_types_ = sorted_unique(bases);

  for (const auto& w : g.vocabulary_) g.signature_.add_object(w, SymbolKind::word);
  std::vector<std::optional<PregroupType>> types(g.vocabulary_.size());
  for (const auto& b : g.basic_types_) {
    for (int z = -g.adjoint_bound_; z <= g.adjoint_bound_; ++z) {
      PregroupType t{b, z};
      g.signature_.add_object(t.name(), SymbolKind::typed);
      types.push_back(t);
    }
  }
  g.start_object_ = *g.signature_.find_object(g.start_);

  std::vector<std::optional<double>> weights;
  std::set<std::pair<std::string, std::vector<PregroupType>>> seen;
  for (const auto& e : decl.lexicon) {
    if (!seen.emplace(e.word, e.type).second) throw GrammarError("duplicate lexicon entry", e.line);
    Generator gen;
    gen.kind = GeneratorKind::lexical;
    gen.name = e.word + " :";
    gen.dom = {*g.signature_.find_object(e.word)};
    for (const auto& t : e.type) {
      gen.name += " " + t.name();
      gen.cod.push_back(*g.signature_.find_object(t.name()));
    }
    g.signature_.add_arrow(std::move(gen));
    weights.push_back(e.weight);
  }
  for (const auto& b : g.basic_types_) {
    for (int z = -g.adjoint_bound_; z < g.adjoint_bound_; ++z) {
      PregroupType left{b, z};
      Generator gen;
      gen.kind = GeneratorKind::cup;
      gen.name = "cup[" + left.name() + "]";
      gen.dom = {*g.signature_.find_object(left.name()), *g.signature_.find_object(left.right().name())};
      g.signature_.add_arrow(std::move(gen));
      weights.push_back(std::nullopt);
    }
  }
  for (const auto& c : decl.cups) {
    auto id = g.signature_.find_arrow("cup[" + c.left.name() + "]");
    if (!id) throw GrammarError("no cup for type '" + c.left.name() + "'", c.line);
    weights[*id] = c.weight;
  }
  g.lexicon_ = std::move(decl.lexicon);
  finish_weights();
  g.declared_weights_ = std::move(weights);
  g.object_types_ = std::move(types);
  return g;
}

std::optional<SymbolId> GrammarSpec::word_id(std::string_view word) const {
  auto id = signature_.find_object(word);
  if (!id || !is_word(*id)) return std::nullopt;
  return id;
}

std::optional<SymbolId> GrammarSpec::typed_object(const PregroupType& t) const {
  if (mode_ != GrammarMode::pregroup) return std::nullopt;
  auto id = signature_.find_object(t.name());
  if (!id || signature_.object_kind(*id) != SymbolKind::typed) return std::nullopt;
  return id;
}

const PregroupType& GrammarSpec::object_type(SymbolId id) const {
  const auto& t = object_types_.at(id);
  if (!t) throw Error("object '" + signature_.object_name(id) + "' is not a pregroup type");
  return *t;
}

std::vector<SymbolId> GrammarSpec::words(std::span<const std::string> sentence) const {
  std::vector<SymbolId> out;
  out.reserve(sentence.size());
  for (const auto& w : sentence) {
    auto id = word_id(w);
    if (!id) throw InvalidApplication("word '" + w + "' is not in the vocabulary");
    out.push_back(*id);
  }
  return out;
}

GrammarPtr load_grammar(std::string_view text) {
  return std::make_shared<const GrammarSpec>(GrammarSpec::build(parse_grammar_decl(text)));
}

GrammarPtr load_grammar_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw GrammarError("cannot open grammar file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return load_grammar(buf.str());
}

}  // namespace incgram
