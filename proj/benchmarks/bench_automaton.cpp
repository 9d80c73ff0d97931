#include <benchmark/benchmark.h>

#include "incgram/incgram.hpp"

namespace {

using namespace incgram;

GrammarPtr grammar(const char* name) {
  return load_grammar_file(std::string(INCGRAM_DATA_DIR) + "/grammars/" + name);
}

void BM_RunAmbiguous(benchmark::State& state) {
  WeightedGrammar wg(grammar("ambiguous.cfg"));
  std::vector<std::string> sentence{"she", "saw", "stars"};
  for (int i = 0; i < state.range(0); ++i) {
    sentence.push_back("with");
    sentence.push_back("telescopes");
  }
  for (auto _ : state) benchmark::DoNotOptimize(word_weight(wg, sentence));
  state.SetLabel(std::to_string(sentence.size()) + " words");
}
BENCHMARK(BM_RunAmbiguous)->DenseRange(0, 3);

void BM_RunRecorded(benchmark::State& state) {
  WeightedGrammar wg(grammar("complex.cfg"), SemiringKind::real);
  auto sentence = split_words("Complex Complex Complex houses students");
  for (auto _ : state) benchmark::DoNotOptimize(run(wg, sentence).acceptance);
}
BENCHMARK(BM_RunRecorded);

void BM_StepPregroup(benchmark::State& state) {
  auto g = grammar("alice.pregroup");
  auto wg = boolean_grammar(g);
  ParseState a = run(wg, split_words("Alice loves")).final_frontier().back().state;
  for (auto _ : state) benchmark::DoNotOptimize(step(wg, a, "Bob"));
}
BENCHMARK(BM_StepPregroup);

void BM_Truncate(benchmark::State& state) {
  auto wg = boolean_grammar(grammar("complex.cfg"));
  for (auto _ : state) benchmark::DoNotOptimize(truncate(wg, static_cast<int>(state.range(0))).size());
}
BENCHMARK(BM_Truncate)->DenseRange(1, 3);

}  // namespace
