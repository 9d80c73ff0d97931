#include "incgram/signature.hpp"

#include "incgram/error.hpp"

namespace incgram {

SymbolId MonoidalSignature::add_object(std::string name, SymbolKind kind) {
  auto id = static_cast<SymbolId>(objects_.size());
  auto [it, inserted] = object_index_.emplace(name, id);
  if (!inserted) throw GrammarError("object '" + name + "' declared twice");
  objects_.push_back(std::move(name));
  kinds_.push_back(kind);
  by_first_.emplace_back();
  return id;
}

GeneratorId MonoidalSignature::add_arrow(Generator g) {
  auto id = static_cast<GeneratorId>(arrows_.size());
  for (SymbolId s : g.dom) {
    if (s >= objects_.size()) throw GrammarError("generator '" + g.name + "' uses unknown object");
  }
  for (SymbolId s : g.cod) {
    if (s >= objects_.size()) throw GrammarError("generator '" + g.name + "' uses unknown object");
  }
  if (g.dom.empty()) throw GrammarError("generator '" + g.name + "' has an empty domain");
  auto [it, inserted] = arrow_index_.emplace(g.name, id);
  if (!inserted) throw GrammarError("generator '" + g.name + "' declared twice");
  by_first_[g.dom.front()].push_back(id);
  arrows_.push_back(std::move(g));
  return id;
}

std::optional<SymbolId> MonoidalSignature::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<GeneratorId> MonoidalSignature::find_arrow(std::string_view name) const {
  auto it = arrow_index_.find(std::string(name));
  if (it == arrow_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const GeneratorId> MonoidalSignature::arrows_starting_with(SymbolId first) const {
  if (first >= by_first_.size()) return {};
  return by_first_[first];
}

}  // namespace incgram
