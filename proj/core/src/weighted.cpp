#include "incgram/weighted.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "incgram/error.hpp"

namespace incgram {

void WeightMap::set(GeneratorId g, Value v) {
  if (v.kind() != kind_) {
    throw SemiringMismatch("weight from semiring '" + std::string(to_string(v.kind())) +
                           "' in a '" + std::string(to_string(kind_)) + "' weight map");
  }
  weights_.at(g) = v;
}

namespace {

WeightMap declared_weights(const GrammarSpec& g, SemiringKind kind) {
  WeightMap w(kind, g.signature().arrow_count());
  for (GeneratorId id = 0; id < w.size(); ++id) {
    if (auto d = g.declared_weight(id)) w.set(id, Value::from_double(kind, *d));
  }
  return w;
}

}  // namespace

WeightedGrammar::WeightedGrammar(GrammarPtr grammar, std::optional<SemiringKind> semiring)
    : grammar_(std::move(grammar)),
      weights_(declared_weights(*grammar_, semiring.value_or(grammar_->semiring()))) {}

WeightedGrammar::WeightedGrammar(GrammarPtr grammar, WeightMap weights)
    : grammar_(std::move(grammar)), weights_(std::move(weights)) {
  if (weights_.size() != grammar_->signature().arrow_count()) {
    throw Error("weight map does not cover every generator");
  }
}

WeightedGrammar WeightedGrammar::with_weights(WeightMap weights) const {
  return WeightedGrammar(grammar_, std::move(weights));
}

WeightedGrammar boolean_grammar(GrammarPtr grammar) {
  std::size_t n = grammar->signature().arrow_count();
  return WeightedGrammar(std::move(grammar), WeightMap(SemiringKind::boolean, n));
}

Value arrow_weight(const WeightedGrammar& wg, const ParseState& p) {
  Value acc = wg.one();
  for (const Node* n : p.nodes()) acc = mul(acc, wg.weight(n->generator));
  return acc;
}

Value output_weight(const WeightedGrammar& wg, const ParseState& p) {
  if (!is_parsing(wg.grammar(), p)) return wg.zero();
  return arrow_weight(wg, p);
}

bool check_weight_preserving(const GrammarMorphism& m, const WeightedGrammar& src,
                             const WeightedGrammar& dst, double tol) {
  if (src.semiring() != dst.semiring()) return false;
  for (GeneratorId g = 0; g < m.arrow_map.size(); ++g) {
    if (!approx_eq(src.weight(g), dst.weight(m.arrow_map[g]), tol)) return false;
  }
  return true;
}

namespace {

nlohmann::ordered_json to_json(Value v) {
  if (v.kind() == SemiringKind::boolean) return v.as_bool();
  return v.as_double();
}

}  // namespace

std::string export_weights(const WeightedGrammar& wg) {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  const auto& sig = wg.grammar().signature();
  for (GeneratorId g = 0; g < sig.arrow_count(); ++g) out[sig.arrow(g).name] = to_json(wg.weight(g));
  return out.dump(2) + "\n";
}

WeightedGrammar import_weights(const WeightedGrammar& wg, std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("weights file: ") + e.what());
  }
  if (!doc.is_object()) throw Error("weights file: expected an object of name -> weight");
  WeightMap w = wg.weights();
  const auto& sig = wg.grammar().signature();
  for (const auto& [name, value] : doc.items()) {
    auto id = sig.find_arrow(name);
    if (!id) throw Error("weights file: unknown generator '" + name + "'");
    double d = 0.0;
    if (value.is_boolean()) d = value.get<bool>() ? 1.0 : 0.0;
    else if (value.is_number()) d = value.get<double>();
    else throw Error("weights file: weight of '" + name + "' is not a number");
    w.set(*id, Value::from_double(wg.semiring(), d));
  }
  return wg.with_weights(std::move(w));
}

namespace {

void join(std::ostream& out, const std::vector<std::string>& items) {
  for (const auto& s : items) out << ' ' << s;
}

}  // namespace

std::string write_grammar(const WeightedGrammar& wg) {
  const GrammarSpec& g = wg.grammar();
  const auto& sig = g.signature();
  std::ostringstream out;
  out << "mode: " << to_string(g.mode()) << '\n';
  out << "semiring: " << to_string(wg.semiring()) << '\n';
  out << "start: " << g.start() << '\n';
  if (g.mode() == GrammarMode::pregroup) out << "adjoint-bound: " << g.adjoint_bound() << '\n';
  out << "vocab:";
  join(out, g.vocabulary());
  out << '\n';
  if (g.mode() == GrammarMode::cfg) {
    out << "nonterminals:";
    join(out, g.nonterminals());
    out << '\n';
  } else {
    out << "types:";
    join(out, g.basic_types());
    out << '\n';
  }
  for (GeneratorId id = 0; id < sig.arrow_count(); ++id) {
    const Generator& gen = sig.arrow(id);
    std::string w = format_value(wg.weight(id));
    switch (gen.kind) {
      case GeneratorKind::rule:
        out << "rule: " << gen.name << " @ " << w << '\n';
        break;
      case GeneratorKind::lexical:
        out << "word: " << gen.name << " @ " << w << '\n';
        break;
      case GeneratorKind::cup:
        if (!(wg.weight(id) == wg.one())) {
          out << "cup: " << sig.object_name(gen.dom.front()) << " @ " << w << '\n';
        }
        break;
    }
  }
  return out.str();
}

}  // namespace incgram
