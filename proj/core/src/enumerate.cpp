#include "incgram/enumerate.hpp"

#include <algorithm>

#include "incgram/closure.hpp"

namespace incgram {

namespace {

struct Unit {};

}  // namespace

std::vector<ParseState> enumerate_parsings(const GrammarSpec& g,
                                           std::span<const std::string> sentence,
                                           std::optional<int> depth_bound) {
  auto words = g.words(sentence);
  int bound = depth_bound.value_or(default_depth_bound(words.size()));
  std::vector<std::pair<ParseState, Unit>> seeds;
  seeds.emplace_back(bare_state(g, words), Unit{});
  auto closure = detail::bounded_closure(g, std::move(seeds), bound,
                                         [](Unit, GeneratorId) { return std::optional<Unit>(Unit{}); });
  std::vector<ParseState> out;
  for (auto& [state, _] : closure) {
    if (is_parsing(g, state)) out.push_back(std::move(state));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> all_sentences(const std::vector<std::string>& vocabulary,
                                                    int max_len) {
  std::vector<std::vector<std::string>> out;
  if (max_len < 0) return out;
  std::vector<std::vector<std::string>> layer{{}};
  out.emplace_back();
  for (int len = 1; len <= max_len; ++len) {
    std::vector<std::vector<std::string>> next;
    next.reserve(layer.size() * vocabulary.size());
    for (const auto& s : layer) {
      for (const auto& w : vocabulary) {
        next.push_back(s);
        next.back().push_back(w);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::vector<std::vector<std::string>> language(const GrammarSpec& g, int max_len,
                                               std::optional<int> depth_bound) {
  std::vector<std::vector<std::string>> out;
  for (auto& sentence : all_sentences(g.vocabulary(), max_len)) {
    if (!enumerate_parsings(g, sentence, depth_bound).empty()) out.push_back(std::move(sentence));
  }
  return out;
}

}  // namespace incgram
