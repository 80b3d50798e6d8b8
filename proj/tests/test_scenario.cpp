#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "qframes/errors.hpp"
#include "qframes/pasting.hpp"
#include "qframes/quadratic_integer.hpp"
#include "qframes/scenario.hpp"
#include "support.hpp"

using namespace qframes;

TEST_CASE("quadratic integers multiply exactly") {
  const QuadraticInteger rt(0, 1, 2);
  CHECK(rt * rt == QuadraticInteger(2));
  CHECK((QuadraticInteger(1, 1, 2) * QuadraticInteger(1, -1, 2)) == QuadraticInteger(-1));
  CHECK((rt - rt).is_zero());
  CHECK(QuadraticInteger(-1, 2, 2).to_string() == "-1+2*rt");
  CHECK_THROWS_AS(QuadraticInteger(0, 1, 2) * QuadraticInteger(0, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(QuadraticInteger(INT64_MAX) + QuadraticInteger(1), std::overflow_error);
  CHECK(is_square_free(6));
  CHECK_FALSE(is_square_free(8));
}

TEST_CASE("orthogonality over Z[sqrt 2]") {
  const Ray a{"a", {QuadraticInteger(1), QuadraticInteger(0, 1, 2), QuadraticInteger(0)}};
  const Ray b{"b", {QuadraticInteger(0, 1, 2), QuadraticInteger(-1), QuadraticInteger(0)}};
  const Ray c{"c", {QuadraticInteger(1), QuadraticInteger(1), QuadraticInteger(0)}};
  CHECK(orthogonal(a, b));
  CHECK_FALSE(orthogonal(a, c));
  const Ray d{"d", {QuadraticInteger(1), QuadraticInteger(1)}};
  CHECK_THROWS_AS(orthogonal(a, d), std::invalid_argument);
}

TEST_CASE("one basis gives one context") {
  const auto s = support::rays("basis3");
  CHECK(s.dimension == 3);
  CHECK(s.rays.size() == 3);
  REQUIRE(s.contexts.size() == 1);
  CHECK(s.contexts[0] == std::vector<std::size_t>{0, 1, 2});
}

TEST_CASE("Cabello rays: 18 rays, 9 contexts, each ray in two") {
  const auto s = support::rays("cabello18");
  CHECK(s.dimension == 4);
  CHECK(s.rays.size() == 18);
  REQUIRE(s.contexts.size() == 9);
  std::vector<int> hits(18, 0);
  for (const auto& c : s.contexts) {
    CHECK(c.size() == 4);
    for (auto r : c) ++hits[r];
  }
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 2; }));
}

TEST_CASE("Peres rays: 33 rays, 16 triads") {
  const auto s = support::rays("peres33");
  CHECK(s.radicand == 2);
  CHECK(s.rays.size() == 33);
  CHECK(s.contexts.size() == 16);
}

TEST_CASE("ray file errors") {
  CHECK_THROWS_WITH_AS(load_ray_scenario("dim 3\nray a = (1,0,0)\nray b = (0,1,0)\ncontext a b\n"),
                       doctest::Contains("context of wrong size"), ScenarioError);
  CHECK_THROWS_WITH_AS(load_ray_scenario("dim 3\nray a = (1,0,0)\nray b = (1,1,0)\nray c = (0,0,1)\ncontext a b c\n"),
                       doctest::Contains("non-orthogonal"), ScenarioError);
  CHECK_THROWS_AS(load_ray_scenario("dim 2\nray a = (1,0)\nray b = (2,0)\n"), ScenarioError);
  CHECK_THROWS_AS(load_ray_scenario("dim 2\nray a = (1,rt)\n"), ParseError);
  try {
    load_ray_scenario("dim 2\nray a = (1, 0)\nray b = (0, x)\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 0);
  }
}

TEST_CASE("explicit contexts are kept as given") {
  const auto s = load_ray_scenario("dim 2\nray a = (1,0)\nray b = (0,1)\nray c = (1,1)\nray d = (1,-1)\ncontext a b\n");
  CHECK(s.explicit_contexts);
  CHECK(s.contexts.size() == 1);
}

TEST_CASE("block files and invariants") {
  const auto s = load_block_scenario("atoms a b c d e\nblock a b c\nblock c d e\n");
  CHECK(s.atoms.size() == 5);
  CHECK(s.blocks.size() == 2);
  CHECK_THROWS_AS(load_block_scenario("atoms a b c\nblock a b c\nblock a b\n"), ScenarioError);
  CHECK_THROWS_AS(load_block_scenario("atoms a b c\nblock a b\n"), ScenarioError);
  CHECK_THROWS_AS(load_block_scenario("atoms a b\nblock a z\n"), ParseError);
}

TEST_CASE("pasting sizes agree with the closure oracle") {
  struct Case {
    const char* text;
    std::size_t size;
  };
  for (const auto& [text, size] : {Case{"atoms p q\nblock p q\n", 4}, Case{"atoms a a' b b'\nblock a a'\nblock b b'\n", 6},
                                   Case{"atoms a b c d e\nblock a b c\nblock c d e\n", 12}}) {
    const auto s = load_block_scenario(text);
    const auto pasted = scenario_orthoposet(s);
    CHECK(pasted.structure.size() == size);
    CHECK(oracle::pasting_size(s.blocks) == size);
    REQUIRE(pasted.lattice);
    CHECK_FALSE(pasted.orthomodularity_witness);
  }
}

TEST_CASE("Cabello pasting is not a lattice") {
  const auto pasted = scenario_orthoposet(support::blocks("cabello18"));
  CHECK_FALSE(pasted.is_lattice());
  REQUIRE(pasted.missing_bound);
  CHECK(pasted.missing_bound->is_join);
  CHECK(oracle::pasting_size(support::blocks("cabello18").blocks) == pasted.structure.size());
}
