#pragma once

#include <optional>
#include <string>
#include <vector>

#include "incgram/parse_state.hpp"

namespace incgram {

/// All distinct parsings of `sentence`, found by closing the bare sentence
/// under generator applications. Sorted. Throws BoundExceeded when the
/// closure is still growing at `depth_bound` applications (default
/// 10 * (|sentence| + 1)).
std::vector<ParseState> enumerate_parsings(const GrammarSpec& g,
                                           std::span<const std::string> sentence,
                                           std::optional<int> depth_bound = std::nullopt);

/// Every sentence of length <= max_len that has a parsing, ordered by length
/// then lexicographically by word.
std::vector<std::vector<std::string>> language(const GrammarSpec& g, int max_len,
                                               std::optional<int> depth_bound = std::nullopt);

/// All |V|^k sentences for k = 0..max_len, in the same order `language` uses.
std::vector<std::vector<std::string>> all_sentences(const std::vector<std::string>& vocabulary,
                                                    int max_len);

}  // namespace incgram
