#include "incgram/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <unordered_set>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "incgram/error.hpp"

namespace incgram {

namespace {

struct NodeHash {
  std::size_t operator()(const Node* n) const noexcept { return n->hash; }
};
struct NodeEq {
  bool operator()(const Node* a, const Node* b) const { return *a == *b; }
};
using NodeSet = std::unordered_set<const Node*, NodeHash, NodeEq>;

NodeSet node_set(const ParseState& a) {
  auto nodes = a.nodes();
  return {nodes.begin(), nodes.end()};
}

void require_prefix(const ParseState& a, const ParseState& p) {
  auto pa = a.prefix();
  auto pp = p.prefix();
  if (pp.size() > pa.size() || !std::equal(pp.begin(), pp.end(), pa.begin())) {
    throw CorpusError("state prefix is not a prefix of the parsing's sentence");
  }
}

bool nodes_within(const ParseState& p, const NodeSet& nodes) {
  for (const Node* n : p.nodes()) {
    if (!nodes.contains(n)) return false;
  }
  return true;
}

bool has_compliant_step(const GrammarSpec& g, const ParseState& p, const NodeSet& nodes) {
  for (const Application& app : applicable_generators(g, p)) {
    if (nodes_within(apply_generator(g, p, app.generator, app.position), nodes)) return true;
  }
  return false;
}

}  // namespace

bool is_compliant(const ParseState& a, const ParseState& p) {
  require_prefix(a, p);
  return nodes_within(p, node_set(a));
}

bool is_maximal(const GrammarSpec& g, const ParseState& a, const ParseState& p) {
  require_prefix(a, p);
  NodeSet nodes = node_set(a);
  if (!nodes_within(p, nodes)) throw CorpusError("state is not compliant with the parsing");
  return !has_compliant_step(g, p, nodes);
}

std::vector<ParseState> maximal_states(const GrammarSpec& g, const ParseState& a,
                                       std::size_t prefix_len) {
  if (prefix_len > a.prefix().size()) throw CorpusError("prefix longer than the parsing's sentence");
  NodeSet nodes = node_set(a);
  ParseState start = bare_state(g, a.prefix().subspan(0, prefix_len));
  std::unordered_set<ParseState, ParseStateHash> seen{start};
  std::deque<ParseState> queue{start};
  std::vector<ParseState> out;
  while (!queue.empty()) {
    ParseState p = std::move(queue.front());
    queue.pop_front();
    bool extended = false;
    for (const Application& app : applicable_generators(g, p)) {
      ParseState next = apply_generator(g, p, app.generator, app.position);
      if (!nodes_within(next, nodes)) continue;
      extended = true;
      if (seen.insert(next).second) queue.push_back(std::move(next));
    }
    if (!extended) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

double maximal_likelihood(const CorpusModel& model, const ParseState& p) {
  const GrammarSpec& g = model.grammar();
  std::vector<std::string> prefix;
  for (SymbolId w : p.prefix()) prefix.push_back(g.signature().object_name(w));
  double mass = model.prefix_mass(prefix);
  if (mass <= 0.0) throw CorpusError("state prefix has no mass in the corpus");
  double hit = 0.0;
  for (const auto& e : model.entries()) {
    auto pa = e.parsing.prefix();
    if (p.prefix().size() > pa.size() ||
        !std::equal(p.prefix().begin(), p.prefix().end(), pa.begin())) {
      continue;
    }
    NodeSet nodes = node_set(e.parsing);
    if (nodes_within(p, nodes) && !has_compliant_step(g, p, nodes)) hit += e.prob;
  }
  return hit / mass;
}

FeatureBag generator_bag(const ParseState& p) {
  FeatureBag bag;
  for (const Node* n : p.nodes()) ++bag[n->generator];
  return bag;
}

std::vector<ParseState> default_fit_states(const CorpusModel& model) {
  std::set<ParseState> states;
  for (const auto& e : model.entries()) {
    for (std::size_t k = 1; k <= e.sentence.size(); ++k) {
      for (auto& p : maximal_states(model.grammar(), e.parsing, k)) states.insert(std::move(p));
    }
  }
  return {states.begin(), states.end()};
}

std::vector<MultiplicityReport> maximal_state_multiplicity(const CorpusModel& model) {
  std::vector<MultiplicityReport> out;
  for (std::size_t i = 0; i < model.entries().size(); ++i) {
    const auto& e = model.entries()[i];
    for (std::size_t k = 1; k <= e.sentence.size(); ++k) {
      std::size_t count = maximal_states(model.grammar(), e.parsing, k).size();
      if (count != 1) out.push_back({i, k, count});
    }
  }
  return out;
}

std::string_view to_string(FitMethod m) noexcept {
  return m == FitMethod::normal_equations ? "normal" : "gd";
}

FitMethod parse_fit_method(std::string_view name) {
  if (name == "normal" || name == "normal_equations") return FitMethod::normal_equations;
  if (name == "gd" || name == "gradient_descent") return FitMethod::gradient_descent;
  throw FitError("unknown fit method '" + std::string(name) + "'");
}

LeastSquaresSolution solve_least_squares(const Eigen::MatrixXd& design,
                                         const Eigen::VectorXd& targets, const FitParams& params) {
  if (design.rows() < 1) throw FitError("no usable rows");
  if (design.rows() != targets.size()) throw FitError("design and target sizes differ");
  LeastSquaresSolution sol;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
  sol.rank_deficient = cod.rank() < design.cols();

  const Eigen::MatrixXd gram = design.transpose() * design;
  const Eigen::VectorXd rhs = design.transpose() * targets;
  if (params.method == FitMethod::normal_equations) {
    sol.coefficients = sol.rank_deficient ? Eigen::VectorXd(cod.solve(targets))
                                          : Eigen::VectorXd(gram.ldlt().solve(rhs));
  } else {
    double rate = params.learning_rate;
    if (rate <= 0.0) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
      double lambda_max = eig.eigenvalues().maxCoeff();
      if (lambda_max <= 0.0) throw FitError("design matrix is zero");
      rate = 1.0 / lambda_max;
    }
    Eigen::VectorXd b = Eigen::VectorXd::Zero(design.cols());
    for (; sol.iterations < params.max_iterations; ++sol.iterations) {
      Eigen::VectorXd grad = gram * b - rhs;
      if (grad.norm() < params.gradient_tolerance) break;
      b -= rate * grad;
    }
    sol.coefficients = std::move(b);
  }
  sol.residual = (design * sol.coefficients - targets).norm();
  return sol;
}

FitResult fit_weights(const CorpusModel& model, std::optional<std::vector<ParseState>> states,
                      const FitParams& params) {
  const GrammarSpec& g = model.grammar();
  std::vector<ParseState> candidates = states ? std::move(*states) : default_fit_states(model);

  std::vector<FeatureBag> bags;
  std::vector<double> targets;
  std::set<GeneratorId> observed;
  for (const auto& p : candidates) {
    double pr = maximal_likelihood(model, p);
    if (pr <= 0.0) continue;
    bags.push_back(generator_bag(p));
    targets.push_back(std::log(pr));
    for (const auto& [gen, _] : bags.back()) observed.insert(gen);
  }
  if (bags.empty()) throw FitError("no state has nonzero maximal likelihood");

  std::vector<GeneratorId> columns(observed.begin(), observed.end());
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(bags.size()),
                                                 static_cast<Eigen::Index>(columns.size()));
  Eigen::VectorXd y(static_cast<Eigen::Index>(bags.size()));
  for (std::size_t i = 0; i < bags.size(); ++i) {
    y(static_cast<Eigen::Index>(i)) = targets[i];
    for (std::size_t j = 0; j < columns.size(); ++j) {
      auto it = bags[i].find(columns[j]);
      if (it != bags[i].end()) {
        design(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = it->second;
      }
    }
  }

  LeastSquaresSolution sol = solve_least_squares(design, y, params);
  FitResult result{WeightMap(SemiringKind::real, g.signature().arrow_count()),
                   sol.residual, bags.size(), sol.rank_deficient, sol.iterations, {}};
  for (std::size_t j = 0; j < columns.size(); ++j) {
    result.weight_map.set(columns[j], Value::from_double(SemiringKind::real,
                                                         std::exp(sol.coefficients(static_cast<Eigen::Index>(j)))));
  }
  for (GeneratorId gen = 0; gen < g.signature().arrow_count(); ++gen) {
    if (!observed.contains(gen)) result.unobserved.push_back(gen);
  }
  return result;
}

std::string fit_result_to_json(const GrammarSpec& g, const FitResult& result) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  for (GeneratorId gen = 0; gen < g.signature().arrow_count(); ++gen) {
    doc[g.signature().arrow(gen).name] = result.weight_map[gen].as_double();
  }
  return doc.dump(2) + "\n";
}

}  // namespace incgram
