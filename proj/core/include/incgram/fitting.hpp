#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "incgram/parse_state.hpp"
#include "incgram/weighted.hpp"

namespace incgram {

/// One point of the joint distribution over (sentence, parsing).
struct CorpusEntry {
  std::vector<std::string> sentence;
  ParseState parsing;
  double prob = 0.0;
};

/// A finite language model: a joint distribution over (sentence, parsing)
/// pairs. Both conditional families are derived from it.
class CorpusModel {
 public:
  /// Validates probabilities (each in [0,1], total 1 within 1e-9) and that
  /// every parsing is a parsing of its sentence.
  CorpusModel(GrammarPtr grammar, std::vector<CorpusEntry> entries);

  /// JSON list of {"sentence": [...], "parsing": "<canonical>", "prob": p}.
  static CorpusModel from_json(GrammarPtr grammar, std::string_view json_text);

  const GrammarSpec& grammar() const noexcept { return *grammar_; }
  const GrammarPtr& grammar_ptr() const noexcept { return grammar_; }
  const std::vector<CorpusEntry>& entries() const noexcept { return entries_; }

  /// Total probability of sentences extending `prefix`.
  double prefix_mass(std::span<const std::string> prefix) const;

 private:
  GrammarPtr grammar_;
  std::vector<CorpusEntry> entries_;
};

std::string corpus_to_json(const CorpusModel& model);

using Sentence = std::vector<std::string>;

/// Pr(completion | prefix). Sorted by completion. Throws CorpusError when the
/// prefix has no mass.
std::vector<std::pair<Sentence, double>> conditional_completion(
    const CorpusModel& model, std::span<const std::string> prefix);

/// Pr(parsing | sentence). Sorted by parsing. Throws CorpusError when the
/// sentence has no mass.
std::vector<std::pair<ParseState, double>> conditional_parsing(
    const CorpusModel& model, std::span<const std::string> sentence);

/// a = a_v o (p (x) a_h) for some a_v, a_h: p's prefix starts a's prefix and
/// every generator node of p occurs in a. Throws CorpusError when the
/// prefixes disagree.
bool is_compliant(const ParseState& a, const ParseState& p);

/// Compliant, and no single generator application on p stays compliant.
/// Throws CorpusError when p is not compliant.
bool is_maximal(const GrammarSpec& g, const ParseState& a, const ParseState& p);

/// Every maximal parse state of the first `prefix_len` words on parsing `a`.
/// Normally exactly one; more indicates overlapping A_p sets.
std::vector<ParseState> maximal_states(const GrammarSpec& g, const ParseState& a,
                                       std::size_t prefix_len);

/// pr_M(p). 0 when no support parsing has p as a maximal state. Throws
/// CorpusError when p's prefix has no mass.
double maximal_likelihood(const CorpusModel& model, const ParseState& p);

/// B_p: occurrence count per generator.
using FeatureBag = std::map<GeneratorId, int>;
FeatureBag generator_bag(const ParseState& p);

/// Maximal states of every non-empty prefix of every support sentence, sorted
/// and deduplicated. These are exactly the states with nonzero pr_M.
std::vector<ParseState> default_fit_states(const CorpusModel& model);

struct MultiplicityReport {
  std::size_t entry = 0;
  std::size_t prefix_len = 0;
  std::size_t count = 0;
};

/// (entry, prefix) pairs whose parsing has more than one maximal state.
std::vector<MultiplicityReport> maximal_state_multiplicity(const CorpusModel& model);

enum class FitMethod : std::uint8_t { normal_equations, gradient_descent };

std::string_view to_string(FitMethod m) noexcept;
FitMethod parse_fit_method(std::string_view name);

struct FitParams {
  FitMethod method = FitMethod::normal_equations;
  /// Gradient descent step size; 0 picks 1 / lambda_max(X^T X).
  double learning_rate = 0.0;
  long max_iterations = 2'000'000;
  /// Stop when the gradient 2-norm falls below this.
  double gradient_tolerance = 1e-13;
};

/// Plain least squares min ||X b - y||_2.
struct LeastSquaresSolution {
  Eigen::VectorXd coefficients;
  double residual = 0.0;
  bool rank_deficient = false;
  long iterations = 0;
};

/// Solves by the normal equations (minimum-norm solution when X is rank
/// deficient) or by gradient descent on 0.5 ||X b - y||^2 from b = 0.
LeastSquaresSolution solve_least_squares(const Eigen::MatrixXd& design,
                                         const Eigen::VectorXd& targets, const FitParams& params);

struct FitResult {
  WeightMap weight_map;
  double residual = 0.0;
  std::size_t rows_used = 0;
  bool rank_deficient = false;
  long iterations = 0;
  /// Generators with no occurrence in any row; their weight is left at 1.
  std::vector<GeneratorId> unobserved;
};

/// Least-squares fit of log r(g) to log pr_M(p) over `states` (default:
/// default_fit_states). Rows with pr_M = 0 are dropped. Throws FitError
/// when no row remains.
FitResult fit_weights(const CorpusModel& model,
                      std::optional<std::vector<ParseState>> states = std::nullopt,
                      const FitParams& params = {});

/// Weights JSON as consumed by import_weights.
std::string fit_result_to_json(const GrammarSpec& g, const FitResult& result);

}  // namespace incgram
