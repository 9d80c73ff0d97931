#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "incgram/morphism.hpp"
#include "incgram/parse_state.hpp"
#include "incgram/weighted.hpp"

namespace incgram {

using AutomatonState = ParseState;

struct WeightedState {
  ParseState state;
  Value weight;
};

/// One evaluation of W*_w(a): the successors a' o W_w(a) with weight r(a').
/// Sorted by state; zero-weight successors are absent.
struct StepDistribution {
  std::vector<WeightedState> successors;

  /// zero() of `kind` when `s` is not a successor.
  Value weight_of(const ParseState& s, SemiringKind kind) const;
};

/// The identity arrow on the empty sentence.
inline AutomatonState initial_state() { return {}; }

StepDistribution step(const WeightedGrammar& wg, const AutomatonState& a, std::string_view word,
                      std::optional<int> depth_bound = std::nullopt);

struct RunOptions {
  std::optional<int> depth_bound;
  /// Record the StepDistribution of every frontier state. When false only
  /// frontiers are kept, which is much cheaper.
  bool record_steps = true;
};

struct WordStep {
  std::string word;
  /// (source state, its step distribution); empty unless record_steps.
  std::vector<std::pair<ParseState, StepDistribution>> transitions;
  /// States after the word, each weighted by arrow_weight. Sorted.
  std::vector<WeightedState> frontier;
};

struct RunTrace {
  std::vector<std::string> sentence;
  std::vector<WeightedState> initial;
  std::vector<WordStep> steps;
  /// Sum of r0 over the final frontier.
  Value acceptance;

  const std::vector<WeightedState>& final_frontier() const {
    return steps.empty() ? initial : steps.back().frontier;
  }
};

RunTrace run(const WeightedGrammar& wg, std::span<const std::string> sentence,
             RunOptions options = {});

/// Sum of arrow weights over all parsings, computed through the automaton.
Value word_weight(const WeightedGrammar& wg, std::span<const std::string> sentence,
                  std::optional<int> depth_bound = std::nullopt);

/// Finite materialization of the coalgebra: every state reachable within
/// `word_depth` words. Transitions are recorded for states of depth <
/// word_depth.
struct TruncatedAutomaton {
  SemiringKind semiring = SemiringKind::boolean;
  std::vector<std::string> vocabulary;
  std::vector<ParseState> states;  // states[0] is the initial state
  std::vector<int> depth;
  std::vector<Value> outputs;
  /// transitions[state][word index] = (successor index, weight), sorted.
  std::vector<std::vector<std::vector<std::pair<std::size_t, Value>>>> transitions;

  std::size_t size() const noexcept { return states.size(); }
};

struct TruncateOptions {
  std::optional<int> depth_bound;
  std::size_t state_cap = 1'000'000;
};

TruncatedAutomaton truncate(const WeightedGrammar& wg, int word_depth,
                            TruncateOptions options = {});

/// Replaces every nonzero weight by true.
TruncatedAutomaton collapse_to_boolean(const TruncatedAutomaton& ta);

struct HomCounterexample {
  ParseState state;
  std::string word;  // empty when the outputs disagree
  std::string detail;
};

struct HomCheckResult {
  bool ok = true;
  std::optional<HomCounterexample> counterexample;
  std::size_t states_checked = 0;
};

/// Checks that h_F commutes with (r0 x W*_w) on the source truncation:
/// r0(a) == r0'(h_F(a)) and the pushforward of W*_w(a) along h_F (adding
/// weights of merged states) equals W'*_w(h_F(a)), for every state of depth
/// < word_depth and every word.
HomCheckResult check_coalgebra_hom(const GrammarMorphism& m, const WeightedGrammar& src,
                                   const WeightedGrammar& dst, int word_depth,
                                   double tol = 1e-9);

/// Bisimilarity of the initial states, by partition refinement on the
/// disjoint union. Both automata must be boolean and share a vocabulary.
bool boolean_bisimilar(const TruncatedAutomaton& a, const TruncatedAutomaton& b);

struct EquivResult {
  bool equivalent = true;
  std::optional<std::vector<std::string>> counterexample;
  std::optional<Value> left_weight;
  std::optional<Value> right_weight;
};

/// word_weight agreement on every sentence up to `max_len`.
EquivResult language_equiv(const WeightedGrammar& a, const WeightedGrammar& b, int max_len,
                           double tol = 1e-9);

/// {"sentence": [...], "steps": [{"word", "frontier": [{state, weight}],
///  "transitions": [...]}], "acceptance": w}
std::string trace_to_json(const WeightedGrammar& wg, const RunTrace& trace);

/// DOT digraph: nodes labeled with codomain and output weight, edges with
/// word/weight.
std::string automaton_to_dot(const GrammarSpec& g, const TruncatedAutomaton& ta);

std::string automaton_to_json(const GrammarSpec& g, const TruncatedAutomaton& ta);

}  // namespace incgram
