#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "incgram/grammar.hpp"

namespace incgram {

struct Node;
using NodePtr = std::shared_ptr<const Node>;

/// An edge of a string diagram. A wire either enters at the domain boundary
/// (`source == nullptr`, `port` = word position) or leaves output `port` of
/// a generator node.
struct Wire {
  NodePtr source;
  std::uint32_t port = 0;
  SymbolId object = 0;

  bool is_boundary() const noexcept { return source == nullptr; }
  std::size_t hash() const noexcept;
};

/// One generator occurrence together with the wires it consumes. Nodes are
/// identified structurally: two nodes are the same iff they apply the same
/// generator to the same wires, so the node term alone pins down the
/// sub-diagram below it.
struct Node {
  GeneratorId generator = 0;
  std::vector<Wire> inputs;
  std::size_t hash = 0;
};

bool operator==(const Wire& a, const Wire& b);
bool operator==(const Node& a, const Node& b);
std::strong_ordering operator<=>(const Wire& a, const Wire& b);
std::strong_ordering operator<=>(const Node& a, const Node& b);

/// An arrow w1 ... wn -> o of the grammar's free monoidal category, kept in
/// canonical form: the open codomain wires plus the generator nodes whose
/// codomain is empty (cups). Equality of ParseStates is arrow equality, so
/// independent generator applications commute by construction.
class ParseState {
 public:
  /// Identity on the empty word sequence.
  ParseState() = default;

  std::span<const SymbolId> prefix() const noexcept { return prefix_; }
  std::span<const Wire> wires() const noexcept { return wires_; }
  std::span<const NodePtr> sinks() const noexcept { return sinks_; }

  std::size_t codomain_size() const noexcept { return wires_.size(); }
  std::vector<SymbolId> codomain() const;

  /// Every generator node in the diagram, each once, in a deterministic
  /// post-order (codomain wires left to right, then sinks).
  std::vector<const Node*> nodes() const;
  std::size_t node_count() const { return nodes().size(); }

  std::size_t hash() const noexcept { return hash_; }

  friend bool operator==(const ParseState& a, const ParseState& b);
  friend std::strong_ordering operator<=>(const ParseState& a, const ParseState& b);

 private:
  friend ParseState append_word(const GrammarSpec&, const ParseState&, SymbolId);
  friend ParseState apply_generator(const GrammarSpec&, const ParseState&, GeneratorId,
                                    std::size_t);
  friend class StateBuilder;

  void rehash();

  std::vector<SymbolId> prefix_;
  std::vector<Wire> wires_;
  std::vector<NodePtr> sinks_;
  std::size_t hash_ = 0;
};

struct ParseStateHash {
  std::size_t operator()(const ParseState& s) const noexcept { return s.hash(); }
};

/// Assembles a ParseState from already-built parts; used by morphism
/// application. Sinks are sorted into canonical order.
class StateBuilder {
 public:
  static ParseState make(std::vector<SymbolId> prefix, std::vector<Wire> wires,
                         std::vector<NodePtr> sinks);
};

NodePtr make_node(GeneratorId generator, std::vector<Wire> inputs);

/// A generator whose domain matches the codomain window starting at
/// `position`.
struct Application {
  GeneratorId generator = 0;
  std::size_t position = 0;
  friend bool operator==(const Application&, const Application&) = default;
};

/// All (generator, position) pairs applicable to `p`, sorted by position then
/// generator declaration order.
std::vector<Application> applicable_generators(const GrammarSpec& g, const ParseState& p);

/// (id (x) g (x) id) o p. Throws InvalidApplication when the domain of `gen`
/// does not match the codomain at `position`.
ParseState apply_generator(const GrammarSpec& g, const ParseState& p, GeneratorId gen,
                           std::size_t position);

/// W_w: extends prefix and codomain by the bare word object.
ParseState append_word(const GrammarSpec& g, const ParseState& p, SymbolId word);
ParseState append_word(const GrammarSpec& g, const ParseState& p, std::string_view word);

/// The identity arrow on a whole sentence.
ParseState bare_state(const GrammarSpec& g, std::span<const SymbolId> sentence);

/// True iff the codomain is exactly [start].
bool is_parsing(const GrammarSpec& g, const ParseState& p);

}  // namespace incgram

template <>
struct std::hash<incgram::ParseState> {
  std::size_t operator()(const incgram::ParseState& s) const noexcept { return s.hash(); }
};
