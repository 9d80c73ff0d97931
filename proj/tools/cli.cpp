#include "cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "incgram/incgram.hpp"

namespace incgram::cli {

namespace {

using json = nlohmann::ordered_json;

struct Config {
  std::string grammar_path;
  std::string semiring;
  std::string weights_path;
  int depth_bound = 0;
  int max_len = 3;
  double tol = 1e-9;
  std::string format = "text";
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::optional<int> depth(const Config& c) {
  return c.depth_bound > 0 ? std::optional<int>(c.depth_bound) : std::nullopt;
}

WeightedGrammar load_weighted(const Config& c, const std::string& path) {
  if (path.empty()) throw Error("--grammar is required");
  GrammarPtr g = load_grammar_file(path);
  std::optional<SemiringKind> kind;
  if (!c.semiring.empty()) kind = parse_semiring(c.semiring);
  WeightedGrammar wg(g, kind);
  if (!c.weights_path.empty()) wg = import_weights(wg, read_file(c.weights_path));
  return wg;
}

std::vector<std::string> sentence_of(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    auto words = split_words(a);
    out.insert(out.end(), words.begin(), words.end());
  }
  return out;
}

json value_json(Value v) {
  if (v.kind() == SemiringKind::boolean) return v.as_bool();
  return v.as_double();
}

void require_format(const Config& c, std::initializer_list<std::string_view> allowed) {
  for (auto f : allowed) {
    if (c.format == f) return;
  }
  throw Error("--format " + c.format + " is not supported by this command");
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

int cmd_parse(const Config& c, const std::vector<std::string>& args, std::ostream& out) {
  require_format(c, {"text", "json"});
  WeightedGrammar wg = load_weighted(c, c.grammar_path);
  auto sentence = sentence_of(args);
  auto parsings = enumerate_parsings(wg.grammar(), sentence, depth(c));
  Value total = word_weight(wg, sentence, depth(c));
  if (c.format == "json") {
    json doc;
    doc["sentence"] = sentence;
    doc["parsings"] = json::array();
    for (const auto& p : parsings) {
      doc["parsings"].push_back(
          {{"state", format_state(wg.grammar(), p)}, {"weight", value_json(arrow_weight(wg, p))}});
    }
    doc["word_weight"] = value_json(total);
    doc["accepted"] = !parsings.empty();
    out << doc.dump(2) << '\n';
  } else {
    out << "parsings: " << parsings.size() << '\n';
    for (std::size_t i = 0; i < parsings.size(); ++i) {
      out << "[" << i << "] " << format_state(wg.grammar(), parsings[i]) << "  weight "
          << format_value(arrow_weight(wg, parsings[i])) << '\n';
    }
    out << "word weight: " << format_value(total) << '\n';
    out << (parsings.empty() ? "reject" : "accept") << '\n';
  }
  return parsings.empty() ? reject : ok;
}

int cmd_step(const Config& c, const std::vector<std::string>& args, std::ostream& out) {
  require_format(c, {"text", "json"});
  WeightedGrammar wg = load_weighted(c, c.grammar_path);
  auto sentence = sentence_of(args);
  RunTrace trace = run(wg, sentence, RunOptions{depth(c), c.format == "json"});
  if (c.format == "json") {
    out << trace_to_json(wg, trace);
    return ok;
  }
  auto print = [&](const std::string& title, const std::vector<WeightedState>& frontier) {
    out << title << ": " << frontier.size() << (frontier.size() == 1 ? " state\n" : " states\n");
    for (const auto& ws : frontier) {
      std::string s = format_state(wg.grammar(), ws.state);
      out << "  " << (s.empty() ? "()" : s) << "  " << format_value(ws.weight) << '\n';
    }
  };
  print("initial", trace.initial);
  for (const auto& ws : trace.steps) print("after '" + ws.word + "'", ws.frontier);
  out << "acceptance: " << format_value(trace.acceptance) << '\n';
  return ok;
}

int cmd_language(const Config& c, std::ostream& out) {
  require_format(c, {"text", "json"});
  GrammarPtr g = load_weighted(c, c.grammar_path).grammar_ptr();
  auto lang = language(*g, c.max_len, depth(c));
  if (c.format == "json") {
    out << json(lang).dump(2) << '\n';
  } else {
    for (const auto& s : lang) out << (s.empty() ? "\"\"" : join(s)) << '\n';
  }
  return ok;
}

int cmd_equiv(const Config& c, const std::string& other_path, const std::string& morphism_path,
              std::ostream& out) {
  require_format(c, {"text", "json"});
  WeightedGrammar left = load_weighted(c, c.grammar_path);
  WeightedGrammar right = load_weighted(c, other_path);
  if (left.grammar().vocabulary() != right.grammar().vocabulary()) {
    throw Error("grammars have different vocabularies");
  }
  json doc;
  bool equivalent = true;
  std::vector<std::string> lines;

  if (!morphism_path.empty()) {
    GrammarMorphism m = load_morphism(read_file(morphism_path), left.grammar_ptr(), right.grammar_ptr());
    bool preserving = check_weight_preserving(m, left, right, c.tol);
    HomCheckResult hom = check_coalgebra_hom(m, left, right, c.max_len, c.tol);
    doc["weight_preserving"] = preserving;
    doc["homomorphism"] = hom.ok;
    lines.push_back(std::string("weight preserving: ") + (preserving ? "yes" : "no"));
    lines.push_back(fmt::format("homomorphism (word depth {}): {}", c.max_len, hom.ok ? "ok" : "fails"));
    if (hom.counterexample) {
      const auto& ce = *hom.counterexample;
      std::string state = format_state(left.grammar(), ce.state);
      doc["counterexample"] = {{"state", state}, {"word", ce.word}, {"detail", ce.detail}};
      lines.push_back("  at state '" + state + "'" + (ce.word.empty() ? "" : " on '" + ce.word + "'") +
                      ": " + ce.detail);
    }
    equivalent = preserving && hom.ok;
  }

  if (left.semiring() == SemiringKind::boolean && right.semiring() == SemiringKind::boolean) {
    auto a = collapse_to_boolean(truncate(left, c.max_len, TruncateOptions{depth(c)}));
    auto b = collapse_to_boolean(truncate(right, c.max_len, TruncateOptions{depth(c)}));
    bool bisim = boolean_bisimilar(a, b);
    doc["bisimilar"] = bisim;
    lines.push_back(fmt::format("bisimilar (word depth {}): {}", c.max_len, bisim ? "yes" : "no"));
    equivalent = equivalent && bisim;
  }
  EquivResult lang = language_equiv(left, right, c.max_len, c.tol);
  doc["language_equivalent"] = lang.equivalent;
  lines.push_back(fmt::format("weights agree up to length {}: {}", c.max_len, lang.equivalent ? "yes" : "no"));
  if (lang.counterexample) {
    std::string s = join(*lang.counterexample);
    doc["distinguishing_sentence"] = *lang.counterexample;
    doc["left_weight"] = value_json(*lang.left_weight);
    doc["right_weight"] = value_json(*lang.right_weight);
    lines.push_back(fmt::format("  \"{}\": {} vs {}", s, format_value(*lang.left_weight),
                                format_value(*lang.right_weight)));
  }
  equivalent = equivalent && lang.equivalent;
  doc["equivalent"] = equivalent;

  if (c.format == "json") {
    out << doc.dump(2) << '\n';
  } else {
    for (const auto& l : lines) out << l << '\n';
    out << (equivalent ? "equivalent" : "not equivalent") << '\n';
  }
  return equivalent ? ok : reject;
}

int cmd_fit(const Config& c, const std::string& corpus_path, const std::string& method,
            const std::string& out_path, std::ostream& out) {
  require_format(c, {"text", "json"});
  GrammarPtr g = load_weighted(c, c.grammar_path).grammar_ptr();
  CorpusModel model = CorpusModel::from_json(g, read_file(corpus_path));
  FitParams params;
  params.method = parse_fit_method(method);
  FitResult r = fit_weights(model, std::nullopt, params);
  std::string weights = fit_result_to_json(*g, r);
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw Error("cannot write '" + out_path + "'");
    f << weights;
  }
  if (c.format == "json") {
    json doc;
    doc["method"] = std::string(to_string(params.method));
    doc["rows_used"] = r.rows_used;
    doc["residual"] = r.residual;
    doc["rank_deficient"] = r.rank_deficient;
    doc["iterations"] = r.iterations;
    doc["weights"] = json::parse(weights);
    out << doc.dump(2) << '\n';
    return ok;
  }
  out << "method: " << to_string(params.method) << '\n';
  out << "rows used: " << r.rows_used << '\n';
  out << fmt::format("residual: {:.3e}\n", r.residual);
  if (r.rank_deficient) out << "warning: design matrix is rank deficient; minimum-norm solution\n";
  for (GeneratorId gen = 0; gen < g->signature().arrow_count(); ++gen) {
    bool unobserved = std::find(r.unobserved.begin(), r.unobserved.end(), gen) != r.unobserved.end();
    out << fmt::format("  {:<28} {}{}\n", g->signature().arrow(gen).name,
                       format_value(r.weight_map[gen]), unobserved ? "  (unobserved)" : "");
  }
  return ok;
}

int cmd_render(const Config& c, const std::vector<std::string>& args, int index, std::ostream& out) {
  require_format(c, {"text", "dot"});
  WeightedGrammar wg = load_weighted(c, c.grammar_path);
  auto parsings = enumerate_parsings(wg.grammar(), sentence_of(args), depth(c));
  if (index < 0 || static_cast<std::size_t>(index) >= parsings.size()) {
    throw Error(fmt::format("parsing index {} out of range ({} parsings)", index, parsings.size()));
  }
  out << render_dot(wg.grammar(), parsings[static_cast<std::size_t>(index)]);
  return ok;
}

int cmd_truncate(const Config& c, std::ostream& out) {
  WeightedGrammar wg = load_weighted(c, c.grammar_path);
  TruncatedAutomaton ta = truncate(wg, c.max_len, TruncateOptions{depth(c)});
  if (c.format == "dot") {
    out << automaton_to_dot(wg.grammar(), ta);
  } else if (c.format == "json") {
    out << automaton_to_json(wg.grammar(), ta);
  } else {
    std::size_t edges = 0;
    for (const auto& row : ta.transitions) {
      for (const auto& succ : row) edges += succ.size();
    }
    out << "states: " << ta.size() << "\ntransitions: " << edges << '\n';
  }
  return ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Incremental semiring-weighted parsing over monoidal grammars.", "incgram"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--grammar,-g", c.grammar_path, "Grammar file");
  app.add_option("--semiring", c.semiring, "Override the grammar's semiring")
      ->check(CLI::IsMember({"bool", "boolean", "real", "viterbi"}));
  app.add_option("--weights", c.weights_path, "Weights JSON applied on top of the grammar file");
  app.add_option("--depth-bound", c.depth_bound, "Generator applications per closure (default 10*(n+1))")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-len", c.max_len, "Sentence length / word depth bound")->check(CLI::NonNegativeNumber);
  app.add_option("--tol", c.tol, "Numeric tolerance")->check(CLI::NonNegativeNumber);
  app.add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));

  std::vector<std::string> words;
  auto* parse = app.add_subcommand("parse", "List every parsing of a sentence");
  parse->add_option("sentence", words, "Sentence (words may be quoted together)");
  auto* stepc = app.add_subcommand("step", "Run the incremental automaton word by word");
  stepc->add_option("sentence", words);
  auto* lang = app.add_subcommand("language", "Enumerate the language up to --max-len");
  std::string other, morphism;
  auto* equiv = app.add_subcommand("equiv", "Compare two grammars");
  equiv->add_option("other", other, "Second grammar file")->required();
  equiv->add_option("--morphism", morphism, "Grammar morphism JSON from --grammar to OTHER");
  std::string corpus, method = "normal", out_path;
  auto* fit = app.add_subcommand("fit", "Fit generator weights to a corpus");
  fit->add_option("corpus", corpus, "Corpus JSON")->required();
  fit->add_option("--method", method)->check(CLI::IsMember({"normal", "gd"}));
  fit->add_option("--out", out_path, "Write the fitted weights JSON here");
  int index = 0;
  auto* render = app.add_subcommand("render", "DOT diagram of one parsing");
  render->add_option("sentence", words);
  render->add_option("--index", index, "Which parsing (in sorted order)");
  auto* trunc = app.add_subcommand("truncate", "Materialize the automaton to --max-len words");
  auto* weights = app.add_subcommand("weights", "Export or import generator weights");
  weights->require_subcommand(1);
  auto* wexport = weights->add_subcommand("export", "Print the weights JSON");
  std::string import_path;
  auto* wimport = weights->add_subcommand("import", "Print the grammar file with imported weights");
  wimport->add_option("file", import_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (parse->parsed()) return cmd_parse(c, words, out);
    if (stepc->parsed()) return cmd_step(c, words, out);
    if (lang->parsed()) return cmd_language(c, out);
    if (equiv->parsed()) return cmd_equiv(c, other, morphism, out);
    if (fit->parsed()) return cmd_fit(c, corpus, method, out_path, out);
    if (render->parsed()) return cmd_render(c, words, index, out);
    if (trunc->parsed()) return cmd_truncate(c, out);
    if (wexport->parsed()) {
      require_format(c, {"text", "json"});
      out << export_weights(load_weighted(c, c.grammar_path));
      return ok;
    }
    if (wimport->parsed()) {
      require_format(c, {"text"});
      WeightedGrammar wg = load_weighted(c, c.grammar_path);
      out << write_grammar(import_weights(wg, read_file(import_path)));
      return ok;
    }
  } catch (const BoundExceeded& e) {
    err << "incgram: " << e.what() << '\n';
    return bound_exceeded;
  } catch (const std::exception& e) {
    err << "incgram: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace incgram::cli
