#pragma once

#include <map>
#include <string>
#include <vector>

#include "incgram/parse_state.hpp"

namespace incgram {

/// A grammar morphism presented on generators: h0 sends each source object
/// to a sequence of target objects, h1 sends each source arrow to a target
/// arrow. Words and the start symbol are fixed.
struct GrammarMorphism {
  GrammarPtr source;
  GrammarPtr target;
  std::vector<std::vector<SymbolId>> object_map;  // indexed by source SymbolId
  std::vector<GeneratorId> arrow_map;             // indexed by source GeneratorId
};

GrammarMorphism identity_morphism(const GrammarPtr& g);

/// Builds and validates a morphism. Objects not listed in `objects` map to
/// the target object of the same name; in pregroup mode a basic-type entry
/// (`"n": ["np"]`) also maps every adjoint of n to the same adjoint of np.
/// Arrows not listed in `arrows` are matched to the unique target generator
/// whose dom/cod equal the mapped dom/cod. Throws MorphismError.
GrammarMorphism make_morphism(const GrammarPtr& source, const GrammarPtr& target,
                              const std::map<std::string, std::vector<std::string>>& objects,
                              const std::map<std::string, std::string>& arrows = {});

/// Parses `{"objects": {...}, "arrows": {...}}`.
GrammarMorphism load_morphism(std::string_view json_text, const GrammarPtr& source,
                              const GrammarPtr& target);

/// Checks the dom/cod squares and that words and start are fixed. Throws
/// MorphismError naming the first violation.
void validate(const GrammarMorphism& m);

/// h_F: relabels every node of `p` along the morphism.
ParseState apply_morphism(const GrammarMorphism& m, const ParseState& p);

}  // namespace incgram
