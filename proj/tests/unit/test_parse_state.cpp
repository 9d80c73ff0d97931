#include <doctest.h>

#include <unordered_set>

#include "support.hpp"

using namespace incgram;
using testing::apply_named;
using testing::bare;
using testing::codomain_names;
using testing::grammar;

namespace {

using Names = std::vector<std::string>;

ParseState alice_lexicalized(const GrammarSpec& g) {
  ParseState p = bare(g, "Alice loves Bob");
  p = apply_named(g, p, "Alice : n", 0);
  p = apply_named(g, p, "loves : n^r s n^l", 1);
  return apply_named(g, p, "Bob : n", 4);
}

}  // namespace

TEST_CASE("applicable generators, cfg") {
  auto g = grammar("complex.cfg");
  ParseState p = bare(*g, "Complex houses");
  p = apply_named(*g, p, "adj -> Complex", 0);
  p = apply_named(*g, p, "np -> houses", 1);
  CHECK(codomain_names(*g, p) == Names{"adj", "np"});
  auto apps = applicable_generators(*g, p);
  REQUIRE(apps.size() == 1);
  CHECK(apps[0] == Application{*g->signature().find_arrow("np -> adj np"), 0});

  ParseState s = enumerate_parsings(*g, testing::words("Complex houses students")).front();
  CHECK(applicable_generators(*g, s).empty());
}

TEST_CASE("applicable generators, pregroup") {
  auto g = grammar("alice.pregroup");
  ParseState p = alice_lexicalized(*g);
  CHECK(codomain_names(*g, p) == Names{"n", "n^r", "s", "n^l", "n"});
  auto apps = applicable_generators(*g, p);
  REQUIRE(apps.size() == 2);
  CHECK(apps[0] == Application{*g->signature().find_arrow("cup[n]"), 0});
  CHECK(apps[1] == Application{*g->signature().find_arrow("cup[n^l]"), 3});
}

TEST_CASE("applicable generators are sorted by position then declaration") {
  auto g = grammar("complex.cfg");
  auto apps = applicable_generators(*g, bare(*g, "houses Complex"));
  REQUIRE(apps.size() == 5);
  CHECK(apps[0].position == 0);
  CHECK(g->signature().arrow(apps[0].generator).name == "np -> houses");
  CHECK(g->signature().arrow(apps[1].generator).name == "itv -> houses");
  CHECK(g->signature().arrow(apps[2].generator).name == "tv -> houses");
  CHECK(apps[3].position == 1);
  CHECK(g->signature().arrow(apps[3].generator).name == "np -> Complex");
  CHECK(g->signature().arrow(apps[4].generator).name == "adj -> Complex");
}

TEST_CASE("apply_generator") {
  auto g = grammar("complex.cfg");
  ParseState p = bare(*g, "Complex disappoint");
  p = apply_named(*g, p, "np -> Complex", 0);
  p = apply_named(*g, p, "itv -> disappoint", 1);
  p = apply_named(*g, p, "vp -> itv", 1);
  CHECK(codomain_names(*g, p) == Names{"np", "vp"});
  ParseState s = apply_named(*g, p, "s -> np vp", 0);
  CHECK(codomain_names(*g, s) == Names{"s"});
  CHECK(is_parsing(*g, s));
  CHECK(s.prefix().size() == 2);

  CHECK_THROWS_AS(apply_named(*g, p, "s -> np vp", 1), InvalidApplication);
  CHECK_THROWS_AS(apply_named(*g, p, "s -> np vp", 7), InvalidApplication);
  CHECK_THROWS_AS(apply_generator(*g, p, 999, 0), InvalidApplication);

  auto pg = grammar("alice.pregroup");
  ParseState c = apply_named(*pg, alice_lexicalized(*pg), "cup[n]", 0);
  CHECK(codomain_names(*pg, c) == Names{"s", "n^l", "n"});
  CHECK(c.sinks().size() == 1);
}

TEST_CASE("append_word") {
  auto pg = grammar("alice.pregroup");
  ParseState p = append_word(*pg, ParseState{}, "Alice");
  CHECK(codomain_names(*pg, p) == Names{"Alice"});
  CHECK(p.prefix().size() == 1);
  CHECK_THROWS_AS(append_word(*pg, p, "xyzzy"), InvalidApplication);

  auto g = grammar("complex.cfg");
  ParseState q = apply_named(*g, bare(*g, "Complex"), "adj -> Complex", 0);
  ParseState r = append_word(*g, q, "houses");
  CHECK(codomain_names(*g, r) == Names{"adj", "houses"});
  CHECK(format_prefix(*g, r) == "Complex houses");
  CHECK(format_codomain(*g, r) == "adj houses");
}

TEST_CASE("arrow equality ignores application order") {
  auto g = grammar("complex.cfg");
  ParseState base = bare(*g, "Complex houses students");
  ParseState a = apply_named(*g, apply_named(*g, base, "np -> Complex", 0), "np -> students", 2);
  ParseState b = apply_named(*g, apply_named(*g, base, "np -> students", 2), "np -> Complex", 0);
  CHECK(a == b);
  CHECK(a.hash() == b.hash());
  CHECK_FALSE(a < b);
  CHECK_FALSE(b < a);
  ParseState c = apply_named(*g, base, "adj -> Complex", 0);
  CHECK_FALSE(a == c);
  CHECK(((a < c) != (c < a)));
}

TEST_CASE("canonical strings round-trip") {
  const std::vector<std::pair<std::string, std::string>> cases{
      {"complex.cfg", "Complex houses students"},
      {"alice.pregroup", "Alice loves Bob"},
      {"ambiguous.cfg", "she saw stars with telescopes"}};
  for (const auto& [name, sentence] : cases) {
    auto g = grammar(name);
    for (const auto& u : all_sentences(g->vocabulary(), 3)) {
      for (const auto& p : enumerate_parsings(*g, u)) CHECK(parse_state(*g, format_state(*g, p)) == p);
    }
    std::vector<ParseState> todo{bare(*g, sentence)};
    for (int k = 0; k < 3; ++k) {
      std::vector<ParseState> next;
      for (const auto& p : todo) {
        CHECK(parse_state(*g, format_state(*g, p)) == p);
        for (const auto& app : applicable_generators(*g, p)) {
          next.push_back(apply_generator(*g, p, app.generator, app.position));
        }
      }
      todo = std::move(next);
    }
  }
  auto g = grammar("alice.pregroup");
  CHECK(format_state(*g, ParseState{}) == "");
  CHECK(parse_state(*g, "") == ParseState{});
  CHECK(format_state(*g, apply_named(*g, bare(*g, "Alice"), "Alice : n", 0)) == "Alice:n | | n");
  CHECK(format_state(*g, bare(*g, "Alice loves")) == "Alice loves | | Alice loves");
}

TEST_CASE("malformed canonical strings") {
  auto g = grammar("complex.cfg");
  CHECK_THROWS_AS(parse_state(*g, "s(np(Complex)"), InvalidApplication);
  CHECK_THROWS_AS(parse_state(*g, "s(houses)"), InvalidApplication);
  CHECK_THROWS_AS(parse_state(*g, "np(xyzzy)"), InvalidApplication);
  auto pg = grammar("alice.pregroup");
  CHECK_THROWS_AS(parse_state(*pg, "Alice:n loves:n^r,s,n^l Bob:n | 0-2 | n s"), InvalidApplication);
  CHECK_THROWS_AS(parse_state(*pg, "Alice:n | | s"), InvalidApplication);
  CHECK_THROWS_AS(parse_state(*pg, "Alice:s | | s"), InvalidApplication);
}

TEST_CASE("identity morphism") {
  auto g = grammar("complex.cfg");
  auto m = identity_morphism(g);
  CHECK_NOTHROW(validate(m));
  ParseState p = enumerate_parsings(*g, testing::words("Complex houses students")).front();
  CHECK(apply_morphism(m, p) == p);
  CHECK(apply_morphism(m, ParseState{}) == ParseState{});
}

TEST_CASE("merging nonterminals relabels nodes") {
  auto split = grammar("complex_split.cfg");
  auto merged = grammar("complex.cfg");
  auto m = load_morphism(testing::read("morphisms/split_merge.json"), split, merged);
  CHECK(split->signature().arrow(3).name == "vp -> tv np2");
  CHECK(merged->signature().arrow(m.arrow_map[3]).name == "vp -> tv np");

  for (const auto& p : enumerate_parsings(*split, testing::words("Complex houses students"))) {
    ParseState image = apply_morphism(m, p);
    CHECK(format_state(*merged, image) == "s(np(Complex) vp(tv(houses) np(students)))");
  }
  ParseState partial = apply_named(*split, bare(*split, "Complex houses"), "np2 -> Complex", 0);
  ParseState image = apply_morphism(m, partial);
  CHECK(codomain_names(*merged, image) == Names{"np", "houses"});
  CHECK(image.prefix().size() == 2);
}

TEST_CASE("pregroup renaming extends to adjoints") {
  auto src = grammar("alice.pregroup");
  auto dst = grammar("alice_np.pregroup");
  auto m = load_morphism(testing::read("morphisms/alice_np.json"), src, dst);
  ParseState p = enumerate_parsings(*src, testing::words("Alice loves Bob")).front();
  CHECK(format_state(*dst, apply_morphism(m, p)) ==
        "Alice:np loves:np^r,s,np^l Bob:np | 0-1 3-4 | s");
  CHECK(dst->signature().arrow(m.arrow_map[*src->signature().find_arrow("cup[n^l]")]).name ==
        "cup[np^l]");
}

TEST_CASE("morphism errors") {
  auto a = grammar("alice.pregroup");
  auto b = grammar("alice_np.pregroup");
  auto c = grammar("complex.cfg");
  CHECK_THROWS_AS(make_morphism(a, b, {}), MorphismError);
  CHECK_THROWS_AS(make_morphism(a, c, {}), MorphismError);
  CHECK_THROWS_AS(make_morphism(a, b, {{"n", {"s"}}}), MorphismError);
  CHECK_THROWS_AS(make_morphism(a, b, {{"q", {"np"}}}), MorphismError);
  CHECK_THROWS_AS(load_morphism("{not json", a, b), MorphismError);
  CHECK_THROWS_AS(load_morphism(R"({"objects": {"n": 3}})", a, b), MorphismError);
  CHECK_THROWS_AS(load_morphism(R"({"objects": {"n": "np"}, "arrows": {"Alice : n": "Bob : np"}})", a, b),
                  MorphismError);

  auto m = identity_morphism(c);
  m.arrow_map[0] = 1;
  CHECK_THROWS_AS(validate(m), MorphismError);
}

TEST_CASE("morphisms are functorial on single applications") {
  auto split = grammar("complex_split.cfg");
  auto merged = grammar("complex.cfg");
  auto m = load_morphism(testing::read("morphisms/split_merge.json"), split, merged);
  std::unordered_set<ParseState> seen;
  std::vector<ParseState> todo{bare(*split, "Complex houses disappoint")};
  int checked = 0;
  while (!todo.empty()) {
    ParseState p = todo.back();
    todo.pop_back();
    for (const auto& app : applicable_generators(*split, p)) {
      ParseState q = apply_generator(*split, p, app.generator, app.position);
      CHECK(apply_morphism(m, q) ==
            apply_generator(*merged, apply_morphism(m, p), m.arrow_map[app.generator], app.position));
      std::vector<SymbolId> mapped;
      for (auto o : q.codomain()) mapped.insert(mapped.end(), m.object_map[o].begin(), m.object_map[o].end());
      CHECK(apply_morphism(m, q).codomain() == mapped);
      ++checked;
      if (seen.insert(q).second) todo.push_back(std::move(q));
    }
  }
  CHECK(checked > 50);
}
