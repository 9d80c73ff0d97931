#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace incgram {

using SymbolId = std::uint32_t;
using GeneratorId = std::uint32_t;

enum class SymbolKind : std::uint8_t { word, nonterminal, typed };
enum class GeneratorKind : std::uint8_t { rule, lexical, cup };

/// One arrow generator g : dom -> cod of a monoidal signature.
struct Generator {
  std::string name;
  GeneratorKind kind = GeneratorKind::rule;
  std::vector<SymbolId> dom;
  std::vector<SymbolId> cod;
};

/// Generating objects and arrows of a free monoidal category, with dom/cod
/// as sequences of objects.
class MonoidalSignature {
 public:
  SymbolId add_object(std::string name, SymbolKind kind);
  GeneratorId add_arrow(Generator g);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  const std::string& object_name(SymbolId id) const { return objects_.at(id); }
  SymbolKind object_kind(SymbolId id) const { return kinds_.at(id); }
  const Generator& arrow(GeneratorId id) const { return arrows_.at(id); }
  std::span<const Generator> arrows() const noexcept { return arrows_; }

  std::optional<SymbolId> find_object(std::string_view name) const;
  std::optional<GeneratorId> find_arrow(std::string_view name) const;

  /// Generators whose domain begins with `first`, in declaration order.
  std::span<const GeneratorId> arrows_starting_with(SymbolId first) const;

 private:
  std::vector<std::string> objects_;
  std::vector<SymbolKind> kinds_;
  std::unordered_map<std::string, SymbolId> object_index_;
  std::vector<Generator> arrows_;
  std::unordered_map<std::string, GeneratorId> arrow_index_;
  std::vector<std::vector<GeneratorId>> by_first_;
};

}  // namespace incgram
