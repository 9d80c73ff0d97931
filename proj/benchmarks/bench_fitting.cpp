#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "incgram/incgram.hpp"

namespace {

using namespace incgram;

CorpusModel corpus(const char* grammar_name, const char* corpus_name) {
  std::string dir(INCGRAM_DATA_DIR);
  auto g = load_grammar_file(dir + "/grammars/" + grammar_name);
  std::ifstream in(dir + "/corpora/" + corpus_name);
  std::stringstream buf;
  buf << in.rdbuf();
  return CorpusModel::from_json(g, buf.str());
}

void BM_FitNormal(benchmark::State& state) {
  auto m = corpus("ambiguous.cfg", "ambiguous.json");
  for (auto _ : state) benchmark::DoNotOptimize(fit_weights(m).residual);
}
BENCHMARK(BM_FitNormal);

void BM_FitGradientDescent(benchmark::State& state) {
  auto m = corpus("synthetic.cfg", "synthetic.json");
  FitParams p;
  p.method = FitMethod::gradient_descent;
  for (auto _ : state) benchmark::DoNotOptimize(fit_weights(m, std::nullopt, p).residual);
}
BENCHMARK(BM_FitGradientDescent);

void BM_MaximalStates(benchmark::State& state) {
  auto m = corpus("complex.cfg", "complex.json");
  for (auto _ : state) benchmark::DoNotOptimize(default_fit_states(m).size());
}
BENCHMARK(BM_MaximalStates);

}  // namespace
