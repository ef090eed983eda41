#include <doctest.h>

#include "dcx/models.hpp"
#include "dcx/semantics.hpp"

using namespace dcx;

namespace {
const Vocabulary k1 = Vocabulary::propositional(1);
const Vocabulary digraph = Vocabulary::relational({2});
Formula g1(const char* text) { return parse(text, k1, Dialect::gmlu); }
}  // namespace

TEST_CASE("graded modalities compare counts") {
  const TypeCountVector c({2, 1});
  CHECK(eval_counts(c, g1("<2>p1")));
  CHECK_FALSE(eval_counts(c, g1("<3>p1")));
  CHECK(eval_gmlu(representative(c), g1("<2>p1")));
  CHECK(eval_counts(TypeCountVector({3, 0}), g1("[1]p1")));
  CHECK_FALSE(eval_counts(c, g1("[1]p1")));
  CHECK(eval_counts(c, g1("[2]p1")));
}

TEST_CASE("box is the dual of diamond on every three-world model") {
  const Formula bodies[] = {Formula::literal(0, true), Formula::literal(0, false),
                            Formula::disjunction(Formula::literal(0, true), Formula::literal(0, false)),
                            Formula::conjunction(Formula::literal(0, true), Formula::literal(0, false))};
  for (const auto& m : enumerate_kripke(1, 3))
    for (int d = 1; d <= 4; ++d)
      for (const auto& psi : bodies)
        CHECK(eval_gmlu(m, Formula::box(d, psi)) == !eval_gmlu(m, Formula::diamond(d, dual_negate(psi))));
}

TEST_CASE("pointed evaluation reads the point for bare literals") {
  const auto m = parse_kripke("n=2; w1:p1; w2:!p1", 1);
  CHECK(eval_at(m, 0, Formula::literal(0, true)));
  CHECK_FALSE(eval_at(m, 1, Formula::literal(0, true)));
  CHECK(eval_at_type(TypeCountVector({1, 1}), 1, Formula::literal(0, false)));
}

TEST_CASE("truth is class invariant") {
  const Formula fs[] = {g1("<2>p1"), g1("[2]!p1 & <1>p1"), g1("<1>p1 | [1]!p1")};
  for (int n = 1; n <= 4; ++n)
    for (const auto& m : enumerate_kripke(1, n))
      for (const auto& f : fs) CHECK(eval_gmlu(m, f) == eval_counts(classify(m).counts, f));
}

TEST_CASE("first-order sentences") {
  const auto loop = parse_structure("n=2; R1={(2,2)}", digraph);
  CHECK(eval_fo(loop, parse("E x1 R1(x1,x1)", digraph, Dialect::fo)));
  CHECK_FALSE(eval_fo(parse_structure("n=2; R1={(1,2)}", digraph), parse("E x1 R1(x1,x1)", digraph, Dialect::fo)));
  CHECK_FALSE(eval_fo(loop, parse("A x1 A x2 x1=x2", digraph, Dialect::fo)));
  CHECK(eval_fo(parse_structure("n=1; R1={}", digraph), parse("A x1 A x2 x1=x2", digraph, Dialect::fo)));
  const int asg[] = {0, 1};
  CHECK(eval_fo_open(parse_structure("n=2; R1={(1,2)}", digraph), Formula::atom(0, {0, 1}, true), asg));
}

TEST_CASE("GMLU denotations") {
  const auto u = ClassUniverse::gmlu(1, 2);
  REQUIRE(u.size() == 3);
  const auto d = denotation(g1("<2>p1"), u);
  CHECK(d.count() == 1);
  CHECK(d.test(u.index_of(TypeCountVector({2, 0}))));
  CHECK(denotation(g1("<1>p1 | [1]!p1"), u).all());
}

TEST_CASE("MLU universe order and denotations") {
  const auto u = ClassUniverse::mlu(1);
  REQUIRE(u.size() == 3);
  CHECK(u.type_sets()[0] == TypeSet(0b01, 1));
  CHECK(u.type_sets()[2] == TypeSet(0b11, 1));
  const auto d = denotation(parse("<>p1", k1, Dialect::mlu), u);
  CHECK(d.test(0));
  CHECK_FALSE(d.test(1));
  CHECK(d.test(2));
  CHECK(ClassUniverse::mlu(2, 2).size() == 10);  // type sets of size <= 2 out of 4 types
}

TEST_CASE("negation complements the denotation") {
  const auto u = ClassUniverse::gmlu(1, 4);
  for (const char* t : {"<2>p1", "[3](p1 | !p1) & <1>!p1", "<1>p1 | [2]p1"}) {
    const auto f = g1(t);
    CHECK(denotation(dual_negate(f), u) == ~denotation(f, u));
  }
  const auto fo = ClassUniverse::fo({2}, 2);
  const auto s = parse("E x1 A x2 R1(x1,x2)", digraph, Dialect::fo);
  CHECK(denotation(dual_negate(s), fo) == ~denotation(s, fo));
}

TEST_CASE("FO universe holds the isomorphism classes") {
  CHECK(ClassUniverse::fo({2}, 1).size() == 2);
  CHECK(ClassUniverse::fo({2}, 2).size() == 10);
}

TEST_CASE("the denotation cache agrees with direct computation") {
  DenotationCache cache;
  const auto u = ClassUniverse::gmlu(1, 3);
  const auto f = g1("<2>p1");
  CHECK(cache.get(f, u) == denotation(f, u));
  CHECK(cache.get(f, u) == denotation(f, u));
  CHECK(cache.entries() == 1);
}
