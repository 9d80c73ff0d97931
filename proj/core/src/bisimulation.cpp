#include <algorithm>
#include <map>
#include <tuple>

#include "incgram/automaton.hpp"
#include "incgram/enumerate.hpp"
#include "incgram/error.hpp"

namespace incgram {

bool boolean_bisimilar(const TruncatedAutomaton& a, const TruncatedAutomaton& b) {
  if (a.vocabulary != b.vocabulary) throw Error("automata have different vocabularies");
  if (a.semiring != SemiringKind::boolean || b.semiring != SemiringKind::boolean) {
    throw SemiringMismatch("bisimulation check needs boolean automata; collapse them first");
  }
  if (a.size() == 0 || b.size() == 0) return a.size() == b.size();

  const std::size_t n = a.size() + b.size();
  auto automaton = [&](std::size_t s) -> std::pair<const TruncatedAutomaton*, std::size_t> {
    return s < a.size() ? std::pair{&a, s} : std::pair{&b, s - a.size()};
  };

  std::vector<std::size_t> block(n);
  {
    std::map<std::pair<bool, int>, std::size_t> keys;
    for (std::size_t s = 0; s < n; ++s) {
      auto [ta, i] = automaton(s);
      auto key = std::pair{ta->outputs[i].as_bool(), ta->depth[i]};
      block[s] = keys.try_emplace(key, keys.size()).first->second;
    }
  }

  using Signature = std::tuple<std::size_t, std::vector<std::pair<std::size_t, std::size_t>>>;
  std::size_t blocks = 0;
  for (;;) {
    std::map<Signature, std::size_t> keys;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      auto [ta, i] = automaton(s);
      std::size_t offset = ta == &a ? 0 : a.size();
      std::vector<std::pair<std::size_t, std::size_t>> moves;
      for (std::size_t w = 0; w < ta->vocabulary.size(); ++w) {
        for (const auto& [succ, weight] : ta->transitions[i][w]) {
          if (weight.as_bool()) moves.emplace_back(w, block[succ + offset]);
        }
      }
      std::sort(moves.begin(), moves.end());
      moves.erase(std::unique(moves.begin(), moves.end()), moves.end());
      next[s] = keys.try_emplace(Signature{block[s], std::move(moves)}, keys.size()).first->second;
    }
    block = std::move(next);
    if (keys.size() == blocks) break;
    blocks = keys.size();
  }
  return block[0] == block[a.size()];
}

EquivResult language_equiv(const WeightedGrammar& a, const WeightedGrammar& b, int max_len,
                           double tol) {
  if (a.grammar().vocabulary() != b.grammar().vocabulary()) {
    throw Error("grammars have different vocabularies");
  }
  if (a.semiring() != b.semiring()) throw SemiringMismatch("grammars use different semirings");
  for (const auto& u : all_sentences(a.grammar().vocabulary(), max_len)) {
    Value wl = word_weight(a, u);
    Value wr = word_weight(b, u);
    if (!(approx_eq(wl, wr, tol) || approx_eq_relative(wl, wr, tol))) return {false, u, wl, wr};
  }
  return {};
}

}  // namespace incgram
