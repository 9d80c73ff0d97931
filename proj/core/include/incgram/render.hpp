#pragma once

#include <string>

#include "incgram/parse_state.hpp"

namespace incgram {

/// DOT digraph of a parse state. cfg: generator nodes `g<k>` with edges to
/// their children and word leaves `w<i>`. pregroup: word nodes `w<i>`
/// labeled with their type, one undirected `cup` edge per link, and output
/// nodes `o<k>` for the residual.
std::string render_dot(const GrammarSpec& g, const ParseState& p);

}  // namespace incgram
