#pragma once

#include <string>
#include <string_view>

#include "incgram/parse_state.hpp"

namespace incgram {

/// Canonical text form of a parse state, used as the key in JSON traces and
/// corpus files.
///
/// cfg mode: the forest in prefix order, one tree per codomain wire,
///   e.g. `s(np(Complex) vp(tv(houses) np(students)))`. Unreduced words
///   print bare.
/// pregroup mode: `<words> | <links> | <residual>` where each word prints as
///   `word` (not yet typed) or `word:t1,t2,...`, links are `i-j` pairs of
///   global type indices, and the residual is the codomain,
///   e.g. `Alice:n loves:n^r,s,n^l Bob:n | 0-1 3-4 | s`.
/// The empty state prints as the empty string.
std::string format_state(const GrammarSpec& g, const ParseState& p);

/// Inverse of format_state. Throws InvalidApplication if the text does not
/// describe a valid state of `g`.
ParseState parse_state(const GrammarSpec& g, std::string_view text);

/// Space-separated codomain objects, e.g. "np vp".
std::string format_codomain(const GrammarSpec& g, const ParseState& p);

/// Space-separated prefix words.
std::string format_prefix(const GrammarSpec& g, const ParseState& p);

}  // namespace incgram
