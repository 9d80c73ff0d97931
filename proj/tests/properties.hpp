#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "incgram/incgram.hpp"

namespace props {

inline incgram::Value draw(incgram::SemiringKind kind, std::mt19937_64& rng) {
  using incgram::SemiringKind;
  using incgram::Value;
  switch (kind) {
    case SemiringKind::boolean:
      return Value::boolean(rng() & 1U);
    case SemiringKind::real: {
      // zero now and then so the annihilator law is exercised on real draws
      if (rng() % 16 == 0) return Value::zero(kind);
      std::uniform_real_distribution<double> d(0.0, 10.0);
      return Value::from_double(kind, d(rng));
    }
    case SemiringKind::viterbi:
      return Value::from_double(kind, static_cast<double>(rng() % 1025) / 1024.0);
  }
  return {};
}

/// Number of (triple, law) failures over `triples` random triples.
inline int semiring_law_failures(incgram::SemiringKind kind, int triples, std::uint64_t seed) {
  using namespace incgram;
  std::mt19937_64 rng(seed);
  auto same = [kind](Value a, Value b) {
    return kind == SemiringKind::real ? approx_eq_relative(a, b, 1e-9) : a == b;
  };
  const Value z = zero(kind);
  const Value o = one(kind);
  int failures = 0;
  for (int i = 0; i < triples; ++i) {
    Value a = draw(kind, rng), b = draw(kind, rng), c = draw(kind, rng);
    bool okay = same(add(add(a, b), c), add(a, add(b, c))) && same(add(a, b), add(b, a)) &&
                same(add(a, z), a) && same(add(z, a), a) &&
                same(mul(mul(a, b), c), mul(a, mul(b, c))) && same(mul(a, o), a) &&
                same(mul(o, a), a) && same(mul(a, add(b, c)), add(mul(a, b), mul(a, c))) &&
                same(mul(add(a, b), c), add(mul(a, c), mul(b, c))) && same(mul(a, z), z) &&
                same(mul(z, a), z) && same(mul(a, b), mul(b, a));
    if (!okay) ++failures;
  }
  return failures;
}

struct InterchangeCase {
  incgram::ParseState state;
  incgram::Application first;
  incgram::Application second;  // strictly to the right of `first`
};

/// A random state with two applicable generators on disjoint windows.
inline std::optional<InterchangeCase> random_interchange_case(const incgram::GrammarSpec& g,
                                                              std::mt19937_64& rng) {
  using namespace incgram;
  const auto& vocab = g.vocabulary();
  std::size_t len = 3 + rng() % 4;
  std::vector<SymbolId> sentence;
  for (std::size_t i = 0; i < len; ++i) sentence.push_back(*g.word_id(vocab[rng() % vocab.size()]));
  ParseState p = bare_state(g, sentence);
  std::size_t walk = rng() % (len + 2);
  for (std::size_t k = 0; k < walk; ++k) {
    auto apps = applicable_generators(g, p);
    if (apps.empty()) break;
    const auto& a = apps[rng() % apps.size()];
    p = apply_generator(g, p, a.generator, a.position);
  }
  auto apps = applicable_generators(g, p);
  std::vector<std::pair<Application, Application>> pairs;
  for (const auto& a : apps) {
    std::size_t end = a.position + g.signature().arrow(a.generator).dom.size();
    for (const auto& b : apps) {
      if (b.position >= end) pairs.emplace_back(a, b);
    }
  }
  if (pairs.empty()) return std::nullopt;
  const auto& [a, b] = pairs[rng() % pairs.size()];
  return InterchangeCase{p, a, b};
}

/// Applies both generators in both orders; true iff the results coincide.
inline bool interchange_commutes(const incgram::GrammarSpec& g, const InterchangeCase& c) {
  using namespace incgram;
  const auto& ga = g.signature().arrow(c.first.generator);
  std::size_t shifted = c.second.position - ga.dom.size() + ga.cod.size();
  ParseState left_first = apply_generator(
      g, apply_generator(g, c.state, c.first.generator, c.first.position), c.second.generator,
      shifted);
  ParseState right_first = apply_generator(
      g, apply_generator(g, c.state, c.second.generator, c.second.position), c.first.generator,
      c.first.position);
  return left_first == right_first && left_first.hash() == right_first.hash() &&
         format_state(g, left_first) == format_state(g, right_first);
}

}  // namespace props
