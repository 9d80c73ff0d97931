#include "incgram/parse_state.hpp"

#include <algorithm>
#include <unordered_set>

#include "incgram/error.hpp"

namespace incgram {

namespace {

constexpr std::size_t kBoundarySeed = 0x9e3779b97f4a7c15ULL;

std::size_t mix(std::size_t h, std::size_t v) noexcept {
  // splitmix64 finalizer over the combined value
  std::size_t z = h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::size_t Wire::hash() const noexcept {
  std::size_t h = source ? source->hash : kBoundarySeed;
  h = mix(h, port);
  return mix(h, object);
}

NodePtr make_node(GeneratorId generator, std::vector<Wire> inputs) {
  auto node = std::make_shared<Node>();
  node->generator = generator;
  std::size_t h = mix(0x51ed27ULL, generator);
  for (const Wire& w : inputs) h = mix(h, w.hash());
  node->inputs = std::move(inputs);
  node->hash = h;
  return node;
}

bool operator==(const Node& a, const Node& b) {
  if (&a == &b) return true;
  return a.hash == b.hash && a.generator == b.generator && a.inputs == b.inputs;
}

bool operator==(const Wire& a, const Wire& b) {
  if (a.port != b.port || a.object != b.object) return false;
  if (a.source == b.source) return true;
  if (!a.source || !b.source) return false;
  return *a.source == *b.source;
}

std::strong_ordering operator<=>(const Node& a, const Node& b) {
  if (&a == &b) return std::strong_ordering::equal;
  if (auto c = a.generator <=> b.generator; c != 0) return c;
  return std::lexicographical_compare_three_way(a.inputs.begin(), a.inputs.end(),
                                                b.inputs.begin(), b.inputs.end());
}

std::strong_ordering operator<=>(const Wire& a, const Wire& b) {
  if (a.source != b.source) {
    if (!a.source) return std::strong_ordering::less;
    if (!b.source) return std::strong_ordering::greater;
    if (auto c = *a.source <=> *b.source; c != 0) return c;
  }
  if (auto c = a.port <=> b.port; c != 0) return c;
  return a.object <=> b.object;
}

std::vector<SymbolId> ParseState::codomain() const {
  std::vector<SymbolId> out;
  out.reserve(wires_.size());
  for (const Wire& w : wires_) out.push_back(w.object);
  return out;
}

std::vector<const Node*> ParseState::nodes() const {
  std::vector<const Node*> out;
  std::unordered_set<const Node*> seen;
  // iterative post-order so deep unary chains cannot blow the stack
  std::vector<std::pair<const Node*, std::size_t>> stack;
  auto visit = [&](const Node* root) {
    if (!root || seen.contains(root)) return;
    seen.insert(root);
    stack.emplace_back(root, 0);
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < node->inputs.size()) {
        const Node* child = node->inputs[next++].source.get();
        if (child && seen.insert(child).second) stack.emplace_back(child, 0);
      } else {
        out.push_back(node);
        stack.pop_back();
      }
    }
  };
  for (const Wire& w : wires_) visit(w.source.get());
  for (const NodePtr& s : sinks_) visit(s.get());
  return out;
}

void ParseState::rehash() {
  if (prefix_.empty() && wires_.empty() && sinks_.empty()) {
    hash_ = 0;  // matches a default-constructed state
    return;
  }
  std::size_t h = mix(0x7a11ULL, prefix_.size());
  for (SymbolId w : prefix_) h = mix(h, w);
  h = mix(h, wires_.size());
  for (const Wire& w : wires_) h = mix(h, w.hash());
  for (const NodePtr& s : sinks_) h = mix(h, s->hash);
  hash_ = h;
}

bool operator==(const ParseState& a, const ParseState& b) {
  if (a.hash_ != b.hash_) return false;
  if (a.prefix_ != b.prefix_ || a.wires_ != b.wires_ || a.sinks_.size() != b.sinks_.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.sinks_.size(); ++i) {
    if (!(*a.sinks_[i] == *b.sinks_[i])) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const ParseState& a, const ParseState& b) {
  if (auto c = std::lexicographical_compare_three_way(a.prefix_.begin(), a.prefix_.end(),
                                                      b.prefix_.begin(), b.prefix_.end());
      c != 0) {
    return c;
  }
  if (auto c = std::lexicographical_compare_three_way(a.wires_.begin(), a.wires_.end(),
                                                      b.wires_.begin(), b.wires_.end());
      c != 0) {
    return c;
  }
  return std::lexicographical_compare_three_way(
      a.sinks_.begin(), a.sinks_.end(), b.sinks_.begin(), b.sinks_.end(),
      [](const NodePtr& x, const NodePtr& y) { return *x <=> *y; });
}

ParseState StateBuilder::make(std::vector<SymbolId> prefix, std::vector<Wire> wires,
                              std::vector<NodePtr> sinks) {
  ParseState p;
  p.prefix_ = std::move(prefix);
  p.wires_ = std::move(wires);
  p.sinks_ = std::move(sinks);
  std::sort(p.sinks_.begin(), p.sinks_.end(),
            [](const NodePtr& x, const NodePtr& y) { return (*x <=> *y) < 0; });
  p.rehash();
  return p;
}

std::vector<Application> applicable_generators(const GrammarSpec& g, const ParseState& p) {
  const MonoidalSignature& sig = g.signature();
  std::vector<Application> out;
  auto wires = p.wires();
  for (std::size_t pos = 0; pos < wires.size(); ++pos) {
    for (GeneratorId id : sig.arrows_starting_with(wires[pos].object)) {
      const auto& dom = sig.arrow(id).dom;
      if (pos + dom.size() > wires.size()) continue;
      bool match = true;
      for (std::size_t k = 1; k < dom.size() && match; ++k) match = wires[pos + k].object == dom[k];
      if (match) out.push_back({id, pos});
    }
  }
  return out;
}

ParseState apply_generator(const GrammarSpec& g, const ParseState& p, GeneratorId gen,
                           std::size_t position) {
  const MonoidalSignature& sig = g.signature();
  if (gen >= sig.arrow_count()) throw InvalidApplication("unknown generator");
  const Generator& arrow = sig.arrow(gen);
  if (position + arrow.dom.size() > p.wires_.size()) {
    throw InvalidApplication("generator '" + arrow.name + "' does not fit at position " +
                             std::to_string(position));
  }
  for (std::size_t k = 0; k < arrow.dom.size(); ++k) {
    if (p.wires_[position + k].object != arrow.dom[k]) {
      throw InvalidApplication("generator '" + arrow.name + "' does not match the codomain at position " +
                               std::to_string(position));
    }
  }
  auto begin = p.wires_.begin() + static_cast<std::ptrdiff_t>(position);
  auto end = begin + static_cast<std::ptrdiff_t>(arrow.dom.size());
  NodePtr node = make_node(gen, std::vector<Wire>(begin, end));

  ParseState out;
  out.prefix_ = p.prefix_;
  out.wires_.reserve(p.wires_.size() - arrow.dom.size() + arrow.cod.size());
  out.wires_.insert(out.wires_.end(), p.wires_.begin(), begin);
  for (std::size_t k = 0; k < arrow.cod.size(); ++k) {
    out.wires_.push_back(Wire{node, static_cast<std::uint32_t>(k), arrow.cod[k]});
  }
  out.wires_.insert(out.wires_.end(), end, p.wires_.end());
  out.sinks_ = p.sinks_;
  if (arrow.cod.empty()) {
    auto at = std::lower_bound(out.sinks_.begin(), out.sinks_.end(), node,
                               [](const NodePtr& x, const NodePtr& y) { return (*x <=> *y) < 0; });
    out.sinks_.insert(at, node);
  }
  out.rehash();
  return out;
}

ParseState append_word(const GrammarSpec& g, const ParseState& p, SymbolId word) {
  if (word >= g.signature().object_count() || !g.is_word(word)) {
    throw InvalidApplication("not a vocabulary word");
  }
  ParseState out = p;
  out.wires_.push_back(Wire{nullptr, static_cast<std::uint32_t>(out.prefix_.size()), word});
  out.prefix_.push_back(word);
  out.rehash();
  return out;
}

ParseState append_word(const GrammarSpec& g, const ParseState& p, std::string_view word) {
  auto id = g.word_id(word);
  if (!id) throw InvalidApplication("word '" + std::string(word) + "' is not in the vocabulary");
  return append_word(g, p, *id);
}

ParseState bare_state(const GrammarSpec& g, std::span<const SymbolId> sentence) {
  ParseState p;
  for (SymbolId w : sentence) p = append_word(g, p, w);
  return p;
}

bool is_parsing(const GrammarSpec& g, const ParseState& p) {
  return p.codomain_size() == 1 && p.wires()[0].object == g.start_object();
}

}  // namespace incgram
