#pragma once

#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "incgram/error.hpp"
#include "incgram/parse_state.hpp"

namespace incgram::detail {

/// Breadth-first closure of `seeds` under single generator applications.
/// `extend(payload, generator)` returns the successor payload or nullopt to
/// prune the edge. States are deduplicated; the first payload to reach a
/// state wins. Throws BoundExceeded if states at depth `depth_bound` still
/// have unseen successors.
template <class Payload, class Extend>
std::vector<std::pair<ParseState, Payload>> bounded_closure(
    const GrammarSpec& g, std::vector<std::pair<ParseState, Payload>> seeds, int depth_bound,
    Extend&& extend) {
  std::deque<std::pair<ParseState, Payload>> found;
  std::unordered_map<ParseState, std::size_t, ParseStateHash> seen;
  std::vector<std::size_t> level;
  for (auto& seed : seeds) {
    if (seen.emplace(seed.first, found.size()).second) {
      level.push_back(found.size());
      found.push_back(std::move(seed));
    }
  }
  for (int depth = 0; !level.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t idx : level) {
      const auto& [state, payload] = found[idx];
      for (const Application& app : applicable_generators(g, state)) {
        std::optional<Payload> extended = extend(payload, app.generator);
        if (!extended) continue;
        ParseState succ = apply_generator(g, state, app.generator, app.position);
        if (seen.contains(succ)) continue;
        if (depth >= depth_bound) {
          throw BoundExceeded("closure still growing at depth bound " +
                              std::to_string(depth_bound));
        }
        seen.emplace(succ, found.size());
        next.push_back(found.size());
        found.emplace_back(std::move(succ), std::move(*extended));
      }
    }
    level = std::move(next);
  }
  return {std::make_move_iterator(found.begin()), std::make_move_iterator(found.end())};
}

}  // namespace incgram::detail
