#include "incgram/morphism.hpp"

#include <algorithm>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "incgram/error.hpp"

namespace incgram {

namespace {

std::vector<SymbolId> map_objects(const GrammarMorphism& m, std::span<const SymbolId> objs) {
  std::vector<SymbolId> out;
  for (SymbolId s : objs) {
    const auto& img = m.object_map.at(s);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

std::string names(const GrammarSpec& g, std::span<const SymbolId> objs) {
  std::string out = "[";
  for (std::size_t i = 0; i < objs.size(); ++i) {
    if (i) out += ' ';
    out += g.signature().object_name(objs[i]);
  }
  return out + "]";
}

}  // namespace

GrammarMorphism identity_morphism(const GrammarPtr& g) {
  GrammarMorphism m{g, g, {}, {}};
  for (SymbolId s = 0; s < g->signature().object_count(); ++s) m.object_map.push_back({s});
  for (GeneratorId a = 0; a < g->signature().arrow_count(); ++a) m.arrow_map.push_back(a);
  return m;
}

GrammarMorphism make_morphism(const GrammarPtr& source, const GrammarPtr& target,
                              const std::map<std::string, std::vector<std::string>>& objects,
                              const std::map<std::string, std::string>& arrows) {
  const auto& ssig = source->signature();
  const auto& tsig = target->signature();
  GrammarMorphism m{source, target, {}, {}};

  auto target_object = [&](const std::string& name) {
    auto id = tsig.find_object(name);
    if (!id) throw MorphismError("target has no object '" + name + "'");
    return *id;
  };
  for (const auto& [name, _] : objects) {
    if (!ssig.find_object(name)) {
      // allowed only as a pregroup basic-type entry
      bool base = source->mode() == GrammarMode::pregroup &&
                  std::find(source->basic_types().begin(), source->basic_types().end(), name) !=
                      source->basic_types().end();
      if (!base) throw MorphismError("source has no object '" + name + "'");
    }
  }

  bool both_pregroup =
      source->mode() == GrammarMode::pregroup && target->mode() == GrammarMode::pregroup;
  for (SymbolId s = 0; s < ssig.object_count(); ++s) {
    const std::string& name = ssig.object_name(s);
    std::vector<SymbolId> img;
    if (auto it = objects.find(name); it != objects.end()) {
      for (const auto& t : it->second) img.push_back(target_object(t));
    } else if (both_pregroup && ssig.object_kind(s) == SymbolKind::typed &&
               objects.contains(source->object_type(s).base)) {
      const auto& bases = objects.at(source->object_type(s).base);
      for (const auto& b : bases) {
        PregroupType t{b, source->object_type(s).adjoint};
        img.push_back(target_object(t.name()));
      }
    } else {
      img.push_back(target_object(name));
    }
    m.object_map.push_back(std::move(img));
  }

  for (GeneratorId a = 0; a < ssig.arrow_count(); ++a) {
    const Generator& gen = ssig.arrow(a);
    if (auto it = arrows.find(gen.name); it != arrows.end()) {
      auto id = tsig.find_arrow(it->second);
      if (!id) throw MorphismError("target has no generator '" + it->second + "'");
      m.arrow_map.push_back(*id);
      continue;
    }
    auto dom = map_objects(m, gen.dom);
    auto cod = map_objects(m, gen.cod);
    std::optional<GeneratorId> match;
    for (GeneratorId b = 0; b < tsig.arrow_count(); ++b) {
      if (tsig.arrow(b).dom == dom && tsig.arrow(b).cod == cod) {
        if (match) throw MorphismError("generator '" + gen.name + "' has an ambiguous image");
        match = b;
      }
    }
    if (!match) {
      throw MorphismError("no target generator " + names(*target, dom) + " -> " +
                          names(*target, cod) + " for '" + gen.name + "'");
    }
    m.arrow_map.push_back(*match);
  }
  validate(m);
  return m;
}

GrammarMorphism load_morphism(std::string_view json_text, const GrammarPtr& source,
                              const GrammarPtr& target) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw MorphismError(std::string("morphism file: ") + e.what());
  }
  std::map<std::string, std::vector<std::string>> objects;
  std::map<std::string, std::string> arrows;
  try {
    if (doc.contains("objects")) {
      for (const auto& [k, v] : doc.at("objects").items()) {
        if (v.is_string()) objects[k] = {v.get<std::string>()};
        else objects[k] = v.get<std::vector<std::string>>();
      }
    }
    if (doc.contains("arrows")) {
      for (const auto& [k, v] : doc.at("arrows").items()) arrows[k] = v.get<std::string>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw MorphismError(std::string("morphism file: ") + e.what());
  }
  return make_morphism(source, target, objects, arrows);
}

void validate(const GrammarMorphism& m) {
  const auto& src = *m.source;
  const auto& dst = *m.target;
  if (m.object_map.size() != src.signature().object_count() ||
      m.arrow_map.size() != src.signature().arrow_count()) {
    throw MorphismError("morphism is not total on the source signature");
  }
  if (src.vocabulary() != dst.vocabulary()) throw MorphismError("grammars have different vocabularies");
  for (const auto& w : src.vocabulary()) {
    if (m.object_map[*src.word_id(w)] != std::vector<SymbolId>{*dst.word_id(w)}) {
      throw MorphismError("object map does not fix word '" + w + "'");
    }
  }
  if (m.object_map[src.start_object()] != std::vector<SymbolId>{dst.start_object()}) {
    throw MorphismError("object map does not fix the start symbol");
  }
  for (GeneratorId a = 0; a < src.signature().arrow_count(); ++a) {
    const Generator& g = src.signature().arrow(a);
    if (m.arrow_map[a] >= dst.signature().arrow_count()) throw MorphismError("arrow image out of range");
    const Generator& h = dst.signature().arrow(m.arrow_map[a]);
    if (map_objects(m, g.dom) != h.dom || map_objects(m, g.cod) != h.cod) {
      throw MorphismError("generator '" + g.name + "' -> '" + h.name + "' breaks the dom/cod square");
    }
  }
}

namespace {

class MorphismApplier {
 public:
  explicit MorphismApplier(const GrammarMorphism& m) : m_(m) {}

  std::vector<Wire> wire(const Wire& w) {
    if (w.is_boundary()) return {Wire{nullptr, w.port, m_.object_map.at(w.object).front()}};
    NodePtr image = node(*w.source);
    const auto& cod = m_.source->signature().arrow(w.source->generator).cod;
    std::uint32_t offset = 0;
    for (std::uint32_t k = 0; k < w.port; ++k) {
      offset += static_cast<std::uint32_t>(m_.object_map.at(cod[k]).size());
    }
    std::vector<Wire> out;
    for (SymbolId obj : m_.object_map.at(w.object)) out.push_back(Wire{image, offset++, obj});
    return out;
  }

  NodePtr node(const Node& n) {
    if (auto it = memo_.find(&n); it != memo_.end()) return it->second;
    std::vector<Wire> inputs;
    for (const Wire& w : n.inputs) {
      auto mapped = wire(w);
      inputs.insert(inputs.end(), mapped.begin(), mapped.end());
    }
    GeneratorId gen = m_.arrow_map.at(n.generator);
    const auto& dom = m_.target->signature().arrow(gen).dom;
    if (inputs.size() != dom.size()) throw MorphismError("mapped node does not match its generator's domain");
    for (std::size_t i = 0; i < dom.size(); ++i) {
      if (inputs[i].object != dom[i]) throw MorphismError("mapped node does not match its generator's domain");
    }
    NodePtr out = make_node(gen, std::move(inputs));
    memo_.emplace(&n, out);
    return out;
  }

 private:
  const GrammarMorphism& m_;
  std::unordered_map<const Node*, NodePtr> memo_;
};

}  // namespace

ParseState apply_morphism(const GrammarMorphism& m, const ParseState& p) {
  MorphismApplier apply(m);
  std::vector<SymbolId> prefix;
  for (SymbolId w : p.prefix()) prefix.push_back(m.object_map.at(w).front());
  std::vector<Wire> wires;
  for (const Wire& w : p.wires()) {
    auto mapped = apply.wire(w);
    wires.insert(wires.end(), mapped.begin(), mapped.end());
  }
  std::vector<NodePtr> sinks;
  for (const Node* n : p.nodes()) {
    NodePtr image = apply.node(*n);
    if (m.target->signature().arrow(image->generator).cod.empty()) sinks.push_back(image);
  }
  return StateBuilder::make(std::move(prefix), std::move(wires), std::move(sinks));
}

}  // namespace incgram
