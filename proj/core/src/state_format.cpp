#include "incgram/state_format.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

#include "incgram/error.hpp"

namespace incgram {

namespace {

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// --- cfg -------------------------------------------------------------------

void format_tree(const GrammarSpec& g, const Wire& w, std::string& out) {
  const auto& sig = g.signature();
  if (w.is_boundary()) {
    out += sig.object_name(w.object);
    return;
  }
  out += sig.object_name(w.object);
  out += '(';
  const auto& inputs = w.source->inputs;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (i) out += ' ';
    format_tree(g, inputs[i], out);
  }
  out += ')';
}

class ForestParser {
 public:
  ForestParser(const GrammarSpec& g, std::string_view text) : g_(g), text_(text) {}

  ParseState parse() {
    std::vector<Wire> roots;
    skip_space();
    while (pos_ < text_.size()) {
      roots.push_back(tree());
      skip_space();
    }
    return StateBuilder::make(std::move(prefix_), std::move(roots), {});
  }

 private:
  Wire tree() {
    std::string label = ident();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::vector<Wire> children;
      skip_space();
      while (pos_ < text_.size() && text_[pos_] != ')') {
        children.push_back(tree());
        skip_space();
      }
      if (pos_ >= text_.size()) fail("unbalanced '('");
      ++pos_;
      if (children.empty()) fail("empty children for '" + label + "'");
      std::string name = label + " ->";
      for (const Wire& c : children) name += " " + g_.signature().object_name(c.object);
      auto gen = g_.signature().find_arrow(name);
      if (!gen) fail("no rule '" + name + "'");
      auto lhs = g_.signature().find_object(label);
      return Wire{make_node(*gen, std::move(children)), 0, *lhs};
    }
    auto word = g_.word_id(label);
    if (!word) fail("'" + label + "' is not a word (nonterminals need children)");
    prefix_.push_back(*word);
    return Wire{nullptr, static_cast<std::uint32_t>(prefix_.size() - 1), *word};
  }

  std::string ident() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected a symbol at offset " + std::to_string(pos_));
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidApplication("cannot parse state '" + std::string(text_) + "': " + why);
  }

  const GrammarSpec& g_;
  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<SymbolId> prefix_;
};

// --- pregroup --------------------------------------------------------------

/// Global type index of every typed wire produced by a lexical node.
struct TypeLayout {
  std::vector<const Node*> lexical;  // per word position, may be null
  std::vector<std::size_t> offset;   // per word position
  std::size_t total = 0;

  TypeLayout(const GrammarSpec& g, const ParseState& p) {
    std::size_t n = p.prefix().size();
    lexical.assign(n, nullptr);
    offset.assign(n, 0);
    for (const Node* node : p.nodes()) {
      if (g.signature().arrow(node->generator).kind == GeneratorKind::lexical) {
        lexical[node->inputs.at(0).port] = node;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      offset[i] = total;
      if (lexical[i]) total += g.signature().arrow(lexical[i]->generator).cod.size();
    }
  }

  std::optional<std::size_t> index_of(const Wire& w) const {
    if (w.is_boundary()) return std::nullopt;
    const Node* src = w.source.get();
    std::size_t word = src->inputs.at(0).port;
    return offset[word] + w.port;
  }
};

std::string format_pregroup(const GrammarSpec& g, const ParseState& p) {
  if (p.prefix().empty()) return {};
  const auto& sig = g.signature();
  TypeLayout layout(g, p);

  std::vector<std::string> words;
  for (std::size_t i = 0; i < p.prefix().size(); ++i) {
    std::string w = sig.object_name(p.prefix()[i]);
    if (layout.lexical[i]) {
      std::vector<std::string> types;
      for (SymbolId t : sig.arrow(layout.lexical[i]->generator).cod) types.push_back(sig.object_name(t));
      w += ":" + join(types, ",");
    }
    words.push_back(std::move(w));
  }

  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (const Node* node : p.nodes()) {
    if (sig.arrow(node->generator).kind != GeneratorKind::cup) continue;
    links.emplace_back(*layout.index_of(node->inputs[0]), *layout.index_of(node->inputs[1]));
  }
  std::sort(links.begin(), links.end());
  std::vector<std::string> link_text;
  for (auto [a, b] : links) link_text.push_back(std::to_string(a) + "-" + std::to_string(b));

  std::string out = join(words, " ") + " |";
  if (!link_text.empty()) out += " " + join(link_text, " ");
  out += " |";
  if (p.codomain_size() > 0) out += " " + format_codomain(g, p);
  return out;
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

ParseState parse_pregroup(const GrammarSpec& g, std::string_view text) {
  auto fail = [&](const std::string& why) -> ParseState {
    throw InvalidApplication("cannot parse state '" + std::string(text) + "': " + why);
  };
  if (trim(text).empty()) return {};
  std::vector<std::string> sections;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '|') {
      sections.push_back(trim(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  if (sections.size() != 3) return fail("expected 'words | links | residual'");
  const auto& sig = g.signature();

  ParseState p;
  for (const std::string& token : split_words(sections[0])) {
    auto colon = token.find(':');
    std::string word = token.substr(0, colon);
    auto id = g.word_id(word);
    if (!id) return fail("'" + word + "' is not a word");
    p = append_word(g, p, *id);
    if (colon == std::string::npos) continue;
    std::string name = word + " :";
    std::string types = token.substr(colon + 1);
    std::size_t b = 0;
    while (b <= types.size()) {
      auto e = types.find(',', b);
      if (e == std::string::npos) e = types.size();
      name += " " + types.substr(b, e - b);
      b = e + 1;
    }
    auto gen = sig.find_arrow(name);
    if (!gen) return fail("no lexicon entry '" + name + "'");
    p = apply_generator(g, p, *gen, p.codomain_size() - 1);
  }

  std::vector<std::pair<std::size_t, std::size_t>> links;
  for (const std::string& token : split_words(sections[1])) {
    auto dash = token.find('-');
    if (dash == std::string::npos) return fail("bad link '" + token + "'");
    try {
      links.emplace_back(std::stoul(token.substr(0, dash)), std::stoul(token.substr(dash + 1)));
    } catch (const std::exception&) {
      return fail("bad link '" + token + "'");
    }
  }
  // inner links first so every link joins adjacent codomain wires
  std::stable_sort(links.begin(), links.end(), [](auto x, auto y) {
    return (x.second - x.first) < (y.second - y.first);
  });
  for (auto [a, b] : links) {
    TypeLayout layout(g, p);
    auto wires = p.wires();
    bool applied = false;
    for (std::size_t pos = 0; pos + 1 < wires.size(); ++pos) {
      if (layout.index_of(wires[pos]) == a && layout.index_of(wires[pos + 1]) == b) {
        const PregroupType& left = g.object_type(wires[pos].object);
        auto gen = sig.find_arrow("cup[" + left.name() + "]");
        if (!gen) return fail("no cup for '" + left.name() + "'");
        p = apply_generator(g, p, *gen, pos);
        applied = true;
        break;
      }
    }
    if (!applied) {
      return fail("link " + std::to_string(a) + "-" + std::to_string(b) + " does not join adjacent types");
    }
  }
  if (format_codomain(g, p) != sections[2]) {
    return fail("residual '" + sections[2] + "' does not match '" + format_codomain(g, p) + "'");
  }
  return p;
}

}  // namespace

std::string format_state(const GrammarSpec& g, const ParseState& p) {
  if (g.mode() == GrammarMode::pregroup) return format_pregroup(g, p);
  std::string out;
  auto wires = p.wires();
  for (std::size_t i = 0; i < wires.size(); ++i) {
    if (i) out += ' ';
    format_tree(g, wires[i], out);
  }
  return out;
}

ParseState parse_state(const GrammarSpec& g, std::string_view text) {
  if (g.mode() == GrammarMode::pregroup) return parse_pregroup(g, text);
  return ForestParser(g, text).parse();
}

std::string format_codomain(const GrammarSpec& g, const ParseState& p) {
  std::vector<std::string> parts;
  for (SymbolId s : p.codomain()) parts.push_back(g.signature().object_name(s));
  return join(parts, " ");
}

std::string format_prefix(const GrammarSpec& g, const ParseState& p) {
  std::vector<std::string> parts;
  for (SymbolId s : p.prefix()) parts.push_back(g.signature().object_name(s));
  return join(parts, " ");
}

}  // namespace incgram
