#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "incgram/semiring.hpp"
#include "incgram/signature.hpp"

namespace incgram {

enum class GrammarMode : std::uint8_t { cfg, pregroup };

std::string_view to_string(GrammarMode mode) noexcept;

/// A pregroup simple type b^(z): z < 0 counts left adjoints, z > 0 right
/// adjoints.
struct PregroupType {
  std::string base;
  int adjoint = 0;

  /// "n", "n^r", "n^ll", ...
  std::string name() const;
  PregroupType right() const { return {base, adjoint + 1}; }

  friend auto operator<=>(const PregroupType&, const PregroupType&) = default;
};

/// Parses "n", "n^l", "n^rr" ... Throws GrammarError on malformed input.
PregroupType parse_pregroup_type(std::string_view text);

struct RuleDecl {
  std::string lhs;
  std::vector<std::string> rhs;
  std::optional<double> weight;
  int line = 0;
};

struct LexiconDecl {
  std::string word;
  std::vector<PregroupType> type;
  std::optional<double> weight;
  int line = 0;
};

/// Weight annotation for a cup generator, keyed by the left type of the
/// contracted pair.
struct CupDecl {
  PregroupType left;
  double weight = 1.0;
  int line = 0;
};

/// Raw contents of a grammar file, before validation.
struct GrammarDecl {
  std::optional<GrammarMode> mode;
  std::optional<SemiringKind> semiring;
  std::optional<std::string> start;
  std::optional<std::vector<std::string>> vocab;
  std::optional<std::vector<std::string>> nonterminals;
  std::optional<std::vector<std::string>> types;
  std::vector<RuleDecl> rules;
  std::vector<LexiconDecl> lexicon;
  std::vector<CupDecl> cups;
  int adjoint_bound = 2;
};

/// Line-based grammar file reader. See README for the format.
GrammarDecl parse_grammar_decl(std::string_view text);

/// A validated CFG or pregroup grammar, together with the monoidal signature
/// that presents its category. Immutable once built.
class GrammarSpec {
 public:
  static GrammarSpec build(GrammarDecl decl);

  GrammarMode mode() const noexcept { return mode_; }
  SemiringKind semiring() const noexcept { return semiring_; }
  const std::string& start() const noexcept { return start_; }
  SymbolId start_object() const noexcept { return start_object_; }
  int adjoint_bound() const noexcept { return adjoint_bound_; }

  /// Sorted.
  const std::vector<std::string>& vocabulary() const noexcept { return vocabulary_; }
  /// X (cfg mode), sorted.
  const std::vector<std::string>& nonterminals() const noexcept { return nonterminals_; }
  /// B (pregroup mode), sorted.
  const std::vector<std::string>& basic_types() const noexcept { return basic_types_; }

  const std::vector<RuleDecl>& rules() const noexcept { return rules_; }
  const std::vector<LexiconDecl>& lexicon() const noexcept { return lexicon_; }

  const MonoidalSignature& signature() const noexcept { return signature_; }

  std::optional<SymbolId> word_id(std::string_view word) const;
  bool is_word(SymbolId id) const {
    return signature_.object_kind(id) == SymbolKind::word;
  }

  /// Weight written in the file for generator `g`, if any.
  std::optional<double> declared_weight(GeneratorId g) const { return declared_weights_.at(g); }

  /// Typed object for `t` in pregroup mode.
  std::optional<SymbolId> typed_object(const PregroupType& t) const;
  /// Inverse of typed_object; only valid for SymbolKind::typed.
  const PregroupType& object_type(SymbolId id) const;

  /// Converts a sentence to word ids; throws InvalidApplication on an
  /// out-of-vocabulary token.
  std::vector<SymbolId> words(std::span<const std::string> sentence) const;

 private:
  GrammarMode mode_ = GrammarMode::cfg;
  SemiringKind semiring_ = SemiringKind::boolean;
  std::string start_;
  SymbolId start_object_ = 0;
  int adjoint_bound_ = 2;
  std::vector<std::string> vocabulary_;
  std::vector<std::string> nonterminals_;
  std::vector<std::string> basic_types_;
  std::vector<RuleDecl> rules_;
  std::vector<LexiconDecl> lexicon_;
  MonoidalSignature signature_;
  std::vector<std::optional<double>> declared_weights_;
  std::vector<std::optional<PregroupType>> object_types_;
};

using GrammarPtr = std::shared_ptr<const GrammarSpec>;

/// Parses and validates grammar text.
GrammarPtr load_grammar(std::string_view text);
GrammarPtr load_grammar_file(const std::filesystem::path& path);

inline const MonoidalSignature& signature_of(const GrammarSpec& g) { return g.signature(); }

/// Splits on ASCII whitespace.
std::vector<std::string> split_words(std::string_view text);

/// Depth bound used when none is supplied: 10 * (sentence length + 1).
inline int default_depth_bound(std::size_t sentence_length) {
  return 10 * (static_cast<int>(sentence_length) + 1);
}

}  // namespace incgram
