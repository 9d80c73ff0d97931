#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incgram/morphism.hpp"
#include "incgram/parse_state.hpp"
#include "incgram/semiring.hpp"

namespace incgram {

/// r : Sigma_1 -> S, total over the generators of one signature.
class WeightMap {
 public:
  WeightMap(SemiringKind kind, std::size_t generator_count)
      : kind_(kind), weights_(generator_count, Value::one(kind)) {}

  SemiringKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return weights_.size(); }

  Value operator[](GeneratorId g) const { return weights_.at(g); }
  /// Throws SemiringMismatch if `v` belongs to another semiring.
  void set(GeneratorId g, Value v);

 private:
  SemiringKind kind_;
  std::vector<Value> weights_;
};

/// An S-monoidal grammar: a grammar plus a weight for every generator.
class WeightedGrammar {
 public:
  /// Uses the `@ weight` annotations from the file (missing ones are one()).
  /// `semiring` overrides the file's semiring; weights are converted with
  /// Value::from_double.
  explicit WeightedGrammar(GrammarPtr grammar,
                           std::optional<SemiringKind> semiring = std::nullopt);
  WeightedGrammar(GrammarPtr grammar, WeightMap weights);

  const GrammarSpec& grammar() const noexcept { return *grammar_; }
  const GrammarPtr& grammar_ptr() const noexcept { return grammar_; }
  const WeightMap& weights() const noexcept { return weights_; }
  SemiringKind semiring() const noexcept { return weights_.kind(); }

  Value weight(GeneratorId g) const { return weights_[g]; }
  Value zero() const noexcept { return Value::zero(semiring()); }
  Value one() const noexcept { return Value::one(semiring()); }

  WeightedGrammar with_weights(WeightMap weights) const;

 private:
  GrammarPtr grammar_;
  WeightMap weights_;
};

/// Constant-true weights: recovers the plain grammar as a B-monoidal one.
WeightedGrammar boolean_grammar(GrammarPtr grammar);

/// Product of r(g) over every generator occurrence in `p` (one() when empty).
Value arrow_weight(const WeightedGrammar& wg, const ParseState& p);

/// r0: arrow_weight when the codomain is [start], zero() otherwise.
Value output_weight(const WeightedGrammar& wg, const ParseState& p);

/// r(g) == r'(h1(g)) for every source generator, within `tol` for numeric
/// semirings.
bool check_weight_preserving(const GrammarMorphism& m, const WeightedGrammar& src,
                             const WeightedGrammar& dst, double tol = 1e-12);

/// JSON object generator-name -> weight, in declaration order.
std::string export_weights(const WeightedGrammar& wg);

/// Overrides weights named in the JSON object. Unknown names throw Error.
WeightedGrammar import_weights(const WeightedGrammar& wg, std::string_view json_text);

/// Grammar file text carrying the current weights.
std::string write_grammar(const WeightedGrammar& wg);

}  // namespace incgram
