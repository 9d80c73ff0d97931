#include "incgram/automaton.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "incgram/closure.hpp"
#include "incgram/error.hpp"
#include "incgram/state_format.hpp"

namespace incgram {

Value StepDistribution::weight_of(const ParseState& s, SemiringKind kind) const {
  auto it = std::lower_bound(successors.begin(), successors.end(), s,
                             [](const WeightedState& ws, const ParseState& key) { return ws.state < key; });
  if (it == successors.end() || !(it->state == s)) return Value::zero(kind);
  return it->weight;
}

namespace {

SymbolId word_symbol(const GrammarSpec& g, std::string_view word) {
  auto id = g.word_id(word);
  if (!id) throw InvalidApplication("word '" + std::string(word) + "' is not in the vocabulary");
  return *id;
}

auto weighted_extend(const WeightedGrammar& wg) {
  return [&wg](const Value& acc, GeneratorId gen) -> std::optional<Value> {
    Value next = mul(acc, wg.weight(gen));
    if (next.is_zero()) return std::nullopt;
    return next;
  };
}

bool by_state(const WeightedState& a, const WeightedState& b) { return a.state < b.state; }

/// Every state after `word`, starting from a closed frontier, weighted by
/// arrow_weight. One closure seeded with all appended states.
std::vector<WeightedState> extend_frontier(const WeightedGrammar& wg,
                                           const std::vector<WeightedState>& frontier,
                                           SymbolId word, int depth_bound) {
  const GrammarSpec& g = wg.grammar();
  std::vector<std::pair<ParseState, Value>> seeds;
  seeds.reserve(frontier.size());
  for (const auto& ws : frontier) seeds.emplace_back(append_word(g, ws.state, word), ws.weight);
  auto closed = detail::bounded_closure(g, std::move(seeds), depth_bound, weighted_extend(wg));
  std::vector<WeightedState> out;
  out.reserve(closed.size());
  for (auto& [state, _] : closed) {
    Value w = arrow_weight(wg, state);
    out.push_back({std::move(state), w});
  }
  std::sort(out.begin(), out.end(), by_state);
  return out;
}

nlohmann::ordered_json value_json(Value v) {
  if (v.kind() == SemiringKind::boolean) return v.as_bool();
  return v.as_double();
}

}  // namespace

StepDistribution step(const WeightedGrammar& wg, const AutomatonState& a, std::string_view word,
                      std::optional<int> depth_bound) {
  const GrammarSpec& g = wg.grammar();
  SymbolId w = word_symbol(g, word);
  int bound = depth_bound.value_or(default_depth_bound(a.prefix().size() + 1));
  std::vector<std::pair<ParseState, Value>> seeds;
  seeds.emplace_back(append_word(g, a, w), wg.one());
  auto closed = detail::bounded_closure(g, std::move(seeds), bound, weighted_extend(wg));
  StepDistribution dist;
  dist.successors.reserve(closed.size());
  for (auto& [state, weight] : closed) dist.successors.push_back({std::move(state), weight});
  std::sort(dist.successors.begin(), dist.successors.end(), by_state);
  return dist;
}

RunTrace run(const WeightedGrammar& wg, std::span<const std::string> sentence, RunOptions options) {
  const GrammarSpec& g = wg.grammar();
  auto words = g.words(sentence);
  int bound = options.depth_bound.value_or(default_depth_bound(words.size()));

  RunTrace trace;
  trace.sentence.assign(sentence.begin(), sentence.end());
  trace.initial.push_back({initial_state(), wg.one()});
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto& frontier = trace.final_frontier();
    WordStep ws;
    ws.word = sentence[k];
    if (options.record_steps) {
      std::unordered_map<ParseState, Value, ParseStateHash> merged;
      for (const auto& src : frontier) {
        StepDistribution dist = step(wg, src.state, sentence[k], bound);
        for (const auto& succ : dist.successors) {
          merged.try_emplace(succ.state, mul(src.weight, succ.weight));
        }
        ws.transitions.emplace_back(src.state, std::move(dist));
      }
      for (auto& [state, weight] : merged) ws.frontier.push_back({state, weight});
      std::sort(ws.frontier.begin(), ws.frontier.end(), by_state);
    } else {
      ws.frontier = extend_frontier(wg, frontier, words[k], bound);
    }
    trace.steps.push_back(std::move(ws));
  }
  trace.acceptance = wg.zero();
  for (const auto& ws : trace.final_frontier()) {
    trace.acceptance = add(trace.acceptance, output_weight(wg, ws.state));
  }
  return trace;
}

Value word_weight(const WeightedGrammar& wg, std::span<const std::string> sentence,
                  std::optional<int> depth_bound) {
  return run(wg, sentence, RunOptions{depth_bound, false}).acceptance;
}

TruncatedAutomaton truncate(const WeightedGrammar& wg, int word_depth, TruncateOptions options) {
  if (word_depth < 0) throw Error("word depth must be non-negative");
  const GrammarSpec& g = wg.grammar();
  TruncatedAutomaton ta;
  ta.semiring = wg.semiring();
  ta.vocabulary = g.vocabulary();

  std::unordered_map<ParseState, std::size_t, ParseStateHash> index;
  auto intern = [&](const ParseState& s, int depth) {
    auto [it, inserted] = index.emplace(s, ta.states.size());
    if (inserted) {
      if (ta.states.size() >= options.state_cap) {
        throw BoundExceeded("truncation exceeds the state cap of " + std::to_string(options.state_cap));
      }
      ta.states.push_back(s);
      ta.depth.push_back(depth);
      ta.outputs.push_back(output_weight(wg, s));
      ta.transitions.emplace_back(ta.vocabulary.size());
    }
    return it->second;
  };
  intern(initial_state(), 0);
  for (std::size_t i = 0; i < ta.states.size(); ++i) {
    if (ta.depth[i] >= word_depth) continue;
    for (std::size_t w = 0; w < ta.vocabulary.size(); ++w) {
      StepDistribution dist = step(wg, ta.states[i], ta.vocabulary[w], options.depth_bound);
      std::vector<std::pair<std::size_t, Value>> row;
      row.reserve(dist.successors.size());
      for (const auto& succ : dist.successors) {
        row.emplace_back(intern(succ.state, ta.depth[i] + 1), succ.weight);
      }
      std::sort(row.begin(), row.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      ta.transitions[i][w] = std::move(row);
    }
  }
  return ta;
}

TruncatedAutomaton collapse_to_boolean(const TruncatedAutomaton& ta) {
  TruncatedAutomaton out = ta;
  out.semiring = SemiringKind::boolean;
  for (auto& v : out.outputs) v = Value::boolean(!v.is_zero());
  for (auto& row : out.transitions) {
    for (auto& succs : row) {
      for (auto& [_, v] : succs) v = Value::boolean(!v.is_zero());
    }
  }
  return out;
}

namespace {

bool close_enough(Value a, Value b, double tol) {
  return approx_eq(a, b, tol) || approx_eq_relative(a, b, tol);
}

}  // namespace

HomCheckResult check_coalgebra_hom(const GrammarMorphism& m, const WeightedGrammar& src,
                                   const WeightedGrammar& dst, int word_depth, double tol) {
  if (src.semiring() != dst.semiring()) throw SemiringMismatch("grammars use different semirings");
  const GrammarSpec& target = dst.grammar();
  TruncatedAutomaton ta = truncate(src, word_depth);
  HomCheckResult result;

  auto fail = [&](const ParseState& a, std::string word, std::string detail) {
    result.ok = false;
    result.counterexample = HomCounterexample{a, std::move(word), std::move(detail)};
    return result;
  };

  for (std::size_t i = 0; i < ta.size(); ++i) {
    const ParseState& a = ta.states[i];
    ParseState image = apply_morphism(m, a);
    ++result.states_checked;
    Value out_dst = output_weight(dst, image);
    if (!close_enough(ta.outputs[i], out_dst, tol)) {
      return fail(a, "", "output " + format_value(ta.outputs[i]) + " maps to " +
                             format_value(out_dst));
    }
    if (ta.depth[i] >= word_depth) continue;
    for (std::size_t w = 0; w < ta.vocabulary.size(); ++w) {
      std::map<ParseState, Value> pushed;
      for (const auto& [succ, weight] : ta.transitions[i][w]) {
        ParseState h = apply_morphism(m, ta.states[succ]);
        auto [it, inserted] = pushed.try_emplace(std::move(h), weight);
        if (!inserted) it->second = add(it->second, weight);
      }
      StepDistribution expected = step(dst, image, ta.vocabulary[w]);
      const std::string& word = ta.vocabulary[w];
      for (const auto& [state, weight] : pushed) {
        Value there = expected.weight_of(state, dst.semiring());
        if (!close_enough(weight, there, tol)) {
          return fail(a, word, "successor " + format_state(target, state) + " has weight " +
                                   format_value(weight) + " after pushforward but " +
                                   format_value(there) + " in the target");
        }
      }
      for (const auto& succ : expected.successors) {
        if (!pushed.contains(succ.state)) {
          return fail(a, word, "target successor " + format_state(target, succ.state) +
                                   " has no preimage");
        }
      }
    }
  }
  return result;
}

std::string trace_to_json(const WeightedGrammar& wg, const RunTrace& trace) {
  const GrammarSpec& g = wg.grammar();
  auto states = [&](const std::vector<WeightedState>& list) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& ws : list) {
      arr.push_back({{"state", format_state(g, ws.state)}, {"weight", value_json(ws.weight)}});
    }
    return arr;
  };
  nlohmann::ordered_json doc;
  doc["sentence"] = trace.sentence;
  doc["initial"] = states(trace.initial);
  doc["steps"] = nlohmann::ordered_json::array();
  for (const auto& ws : trace.steps) {
    nlohmann::ordered_json s;
    s["word"] = ws.word;
    s["frontier"] = states(ws.frontier);
    s["transitions"] = nlohmann::ordered_json::array();
    for (const auto& [from, dist] : ws.transitions) {
      s["transitions"].push_back(
          {{"from", format_state(g, from)}, {"successors", states(dist.successors)}});
    }
    doc["steps"].push_back(std::move(s));
  }
  doc["acceptance"] = value_json(trace.acceptance);
  return doc.dump(2) + "\n";
}

std::string automaton_to_dot(const GrammarSpec& g, const TruncatedAutomaton& ta) {
  std::ostringstream out;
  out << "digraph automaton {\n  rankdir=LR;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < ta.size(); ++i) {
    std::string cod = format_codomain(g, ta.states[i]);
    out << "  s" << i << " [label=\"" << (cod.empty() ? "()" : cod) << "\\n"
        << format_value(ta.outputs[i]) << "\"";
    if (i == 0) out << ", peripheries=2";
    out << "];\n";
  }
  for (std::size_t i = 0; i < ta.size(); ++i) {
    for (std::size_t w = 0; w < ta.vocabulary.size(); ++w) {
      for (const auto& [succ, weight] : ta.transitions[i][w]) {
        out << "  s" << i << " -> s" << succ << " [label=\"" << ta.vocabulary[w] << "/"
            << format_value(weight) << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::string automaton_to_json(const GrammarSpec& g, const TruncatedAutomaton& ta) {
  nlohmann::ordered_json doc;
  doc["semiring"] = std::string(to_string(ta.semiring));
  doc["vocabulary"] = ta.vocabulary;
  doc["states"] = nlohmann::ordered_json::array();
  doc["transitions"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    doc["states"].push_back({{"id", i},
                             {"state", format_state(g, ta.states[i])},
                             {"depth", ta.depth[i]},
                             {"output", value_json(ta.outputs[i])}});
    for (std::size_t w = 0; w < ta.vocabulary.size(); ++w) {
      for (const auto& [succ, weight] : ta.transitions[i][w]) {
        doc["transitions"].push_back(
            {{"from", i}, {"word", ta.vocabulary[w]}, {"to", succ}, {"weight", value_json(weight)}});
      }
    }
  }
  return doc.dump(2) + "\n";
}

}  // namespace incgram
