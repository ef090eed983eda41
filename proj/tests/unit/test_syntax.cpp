#include <doctest.h>

#include <random>

#include "dcx/errors.hpp"
#include "dcx/models.hpp"
#include "dcx/semantics.hpp"
#include "dcx/syntax.hpp"

using namespace dcx;

namespace {

const Vocabulary k2 = Vocabulary::propositional(2);

// Random well-formed GMLU formula: modalities over propositional bodies,
// combined by and/or at the top.
Formula random_body(std::mt19937_64& rng, int k, int depth) {
  if (depth == 0 || rng() % 3 == 0) return Formula::literal(static_cast<int>(rng() % k), rng() % 2 == 0);
  auto l = random_body(rng, k, depth - 1);
  auto r = random_body(rng, k, depth - 1);
  return rng() % 2 ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
}

Formula random_guarded(std::mt19937_64& rng, int k, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    const int d = 1 + static_cast<int>(rng() % 4);
    auto body = random_body(rng, k, 2);
    return rng() % 2 ? Formula::diamond(d, body) : Formula::box(d, body);
  }
  auto l = random_guarded(rng, k, depth - 1);
  auto r = random_guarded(rng, k, depth - 1);
  return rng() % 2 ? Formula::conjunction(l, r) : Formula::disjunction(l, r);
}

}  // namespace

TEST_CASE("parse maps the grammar onto the tree") {
  const auto f = parse("<1>(p1 & !p2)", k2, Dialect::gmlu);
  CHECK(f == Formula::diamond(1, Formula::conjunction(Formula::literal(0, true), Formula::literal(1, false))));
  const auto g = parse("[3](p1 | p2)", k2, Dialect::gmlu);
  CHECK(g == Formula::box(3, Formula::disjunction(Formula::literal(0, true), Formula::literal(1, true))));
}

TEST_CASE("an unguarded literal is rejected in the modal dialects") {
  CHECK_THROWS_AS(parse("p1 & <1>p1", k2, Dialect::gmlu), WellFormednessError);
  CHECK_THROWS_AS(parse("p1", k2, Dialect::mlu), WellFormednessError);
}

TEST_CASE("MLU admits only grade one; sugar reads as grade one") {
  CHECK(parse("<>p1", k2, Dialect::mlu) == Formula::diamond(1, Formula::literal(0, true)));
  CHECK(parse("[]p1", k2, Dialect::mlu) == Formula::box(1, Formula::literal(0, true)));
  CHECK_THROWS_AS(parse("<2>p1", k2, Dialect::mlu), WellFormednessError);
}

TEST_CASE("malformed text raises a syntax error") {
  CHECK_THROWS_AS(parse("<1>(p1 &", k2, Dialect::gmlu), SyntaxError);
  CHECK_THROWS_AS(parse("<1>p1 @ <1>p2", k2, Dialect::gmlu), SyntaxError);
  CHECK_THROWS(parse("<1>p3", k2, Dialect::gmlu));
}

TEST_CASE("size rules") {
  const auto p1 = Formula::literal(0, true);
  CHECK(size(p1) == 1);
  CHECK(size(Formula::diamond(3, p1)) == 4);
  CHECK(size(Formula::conjunction(p1, Formula::literal(1, false))) == 3);
  CHECK(size(Formula::exists(0, Formula::atom(0, {0, 0}, true))) == 2);
  CHECK(size(Formula::equality(0, 1, false)) == 1);
}

TEST_CASE("dual negation swaps operators and flips polarity") {
  CHECK(dual_negate(Formula::diamond(1, Formula::literal(0, true))) == Formula::box(1, Formula::literal(0, false)));
  CHECK(dual_negate(Formula::exists(0, Formula::equality(0, 0, true))) ==
        Formula::forall(0, Formula::equality(0, 0, false)));
}

TEST_CASE("dual negation is a size-preserving involution") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const auto f = random_guarded(rng, 2, 3);
    const auto g = dual_negate(f);
    CHECK(size(g) == size(f));
    CHECK(dual_negate(g) == f);
  }
}

TEST_CASE("dual negation negates truth on every small model") {
  std::mt19937_64 rng(11);
  for (int k = 1; k <= 2; ++k)
    for (int i = 0; i < 60; ++i) {
      const auto f = random_guarded(rng, k, 2);
      const auto g = dual_negate(f);
      for (int n = 1; n <= 3; ++n)
        for (const auto& m : enumerate_kripke(k, n)) REQUIRE(eval_gmlu(m, g) == !eval_gmlu(m, f));
    }
}

TEST_CASE("type formulas") {
  const auto t = type_formula(OneType(0b10, 2));
  CHECK(t == Formula::conjunction(Formula::literal(0, true), Formula::literal(1, false)));
  CHECK(size(t) == 3);
  CHECK(type_formula(OneType(0, 1)) == Formula::literal(0, true));
  for (int k = 1; k <= 4; ++k)
    for (const auto& pi : OneType::all(k)) CHECK(size(type_formula(pi)) == 2 * k - 1);
}

TEST_CASE("rendering") {
  CHECK(render(Formula::diamond(2, Formula::literal(0, true))) == "<2>p1");
  CHECK(render(Formula::box(1, Formula::disjunction(Formula::literal(0, true), Formula::literal(0, false)))) ==
        "[1](p1 | !p1)");
  CHECK(render(parse("<>p1", k2, Dialect::mlu)) == "<1>p1");
}

TEST_CASE("render then parse is the identity on trees") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto f = random_guarded(rng, 2, 4);
    const auto text = render(f);
    const auto back = parse(text, k2, Dialect::gmlu);
    REQUIRE(back == f);
    CHECK(render(back) == text);
  }
}

TEST_CASE("first-order text") {
  const auto v = Vocabulary::relational({2});
  const auto f = parse("A x1 A x2 !R1(x1,x2)", v, Dialect::fo);
  CHECK(f == Formula::forall(0, Formula::forall(1, Formula::atom(0, {0, 1}, false))));
  CHECK(render(f) == "A x1 A x2 !R1(x1,x2)");
  CHECK(free_variables(Formula::atom(0, {0, 1}, true)) == 0b11U);
  CHECK(free_variables(f) == 0U);
  CHECK_THROWS(parse("E x1 R1(x1)", v, Dialect::fo));
}

TEST_CASE("guardedness") {
  CHECK(is_guarded(parse("<1>p1 & [2]!p2", k2, Dialect::gmlu)));
  CHECK_FALSE(is_guarded(Formula::conjunction(Formula::literal(0, true), Formula::diamond(1, Formula::literal(0, true)))));
}
