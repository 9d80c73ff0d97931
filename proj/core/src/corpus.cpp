#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "incgram/error.hpp"
#include "incgram/fitting.hpp"
#include "incgram/state_format.hpp"

namespace incgram {

namespace {

bool starts_with(std::span<const std::string> sentence, std::span<const std::string> prefix) {
  return prefix.size() <= sentence.size() &&
         std::equal(prefix.begin(), prefix.end(), sentence.begin());
}

std::string entry_label(std::size_t i) { return "corpus entry " + std::to_string(i) + ": "; }

}  // namespace

CorpusModel::CorpusModel(GrammarPtr grammar, std::vector<CorpusEntry> entries)
    : grammar_(std::move(grammar)), entries_(std::move(entries)) {
  if (entries_.empty()) throw CorpusError("corpus has no entries");
  double total = 0.0;
  std::set<std::pair<std::vector<std::string>, ParseState>> seen;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    if (!(e.prob >= 0.0 && e.prob <= 1.0)) {
      throw CorpusError(entry_label(i) + "probability must lie in [0,1]");
    }
    total += e.prob;
    std::vector<SymbolId> words;
    try {
      words = grammar_->words(e.sentence);
    } catch (const InvalidApplication& err) {
      throw CorpusError(entry_label(i) + err.what());
    }
    if (!std::equal(words.begin(), words.end(), e.parsing.prefix().begin(),
                    e.parsing.prefix().end())) {
      throw CorpusError(entry_label(i) + "parsing does not cover the sentence");
    }
    if (!is_parsing(*grammar_, e.parsing)) {
      throw CorpusError(entry_label(i) + "state is not a parsing (codomain is not the start symbol)");
    }
    if (!seen.emplace(e.sentence, e.parsing).second) {
      throw CorpusError(entry_label(i) + "duplicate (sentence, parsing) pair");
    }
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw CorpusError("corpus probabilities sum to " + std::to_string(total) + ", not 1");
  }
}

CorpusModel CorpusModel::from_json(GrammarPtr grammar, std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw CorpusError(std::string("corpus file: ") + e.what());
  }
  if (!doc.is_array()) throw CorpusError("corpus file: expected a list of entries");
  std::vector<CorpusEntry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    CorpusEntry e;
    try {
      const auto& s = item.at("sentence");
      e.sentence = s.is_string() ? split_words(s.get<std::string>()) : s.get<std::vector<std::string>>();
      e.prob = item.at("prob").get<double>();
      std::string text = item.at("parsing").get<std::string>();
      try {
        e.parsing = parse_state(*grammar, text);
      } catch (const Error& err) {
        throw CorpusError(entry_label(i) + "bad parsing '" + text + "': " + err.what());
      }
    } catch (const nlohmann::json::exception& err) {
      throw CorpusError(entry_label(i) + err.what());
    }
    entries.push_back(std::move(e));
  }
  return CorpusModel(std::move(grammar), std::move(entries));
}

double CorpusModel::prefix_mass(std::span<const std::string> prefix) const {
  double mass = 0.0;
  for (const auto& e : entries_) {
    if (starts_with(e.sentence, prefix)) mass += e.prob;
  }
  return mass;
}

std::string corpus_to_json(const CorpusModel& model) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& e : model.entries()) {
    doc.push_back({{"sentence", e.sentence},
                   {"parsing", format_state(model.grammar(), e.parsing)},
                   {"prob", e.prob}});
  }
  return doc.dump(2) + "\n";
}

std::vector<std::pair<Sentence, double>> conditional_completion(
    const CorpusModel& model, std::span<const std::string> prefix) {
  double mass = model.prefix_mass(prefix);
  if (mass <= 0.0) throw CorpusError("prefix has no mass in the corpus");
  std::map<Sentence, double> grouped;
  for (const auto& e : model.entries()) {
    if (!starts_with(e.sentence, prefix)) continue;
    grouped[Sentence(e.sentence.begin() + static_cast<std::ptrdiff_t>(prefix.size()), e.sentence.end())] += e.prob;
  }
  std::vector<std::pair<Sentence, double>> out;
  for (auto& [completion, p] : grouped) out.emplace_back(completion, p / mass);
  return out;
}

std::vector<std::pair<ParseState, double>> conditional_parsing(
    const CorpusModel& model, std::span<const std::string> sentence) {
  std::map<ParseState, double> grouped;
  double mass = 0.0;
  for (const auto& e : model.entries()) {
    if (!std::equal(e.sentence.begin(), e.sentence.end(), sentence.begin(), sentence.end())) continue;
    grouped[e.parsing] += e.prob;
    mass += e.prob;
  }
  if (mass <= 0.0) throw CorpusError("sentence has no mass in the corpus");
  std::vector<std::pair<ParseState, double>> out;
  for (auto& [parsing, p] : grouped) out.emplace_back(parsing, p / mass);
  return out;
}

}  // namespace incgram
