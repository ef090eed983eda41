#include <doctest.h>

#include <random>
#include <set>

#include "dcx/models.hpp"

using namespace dcx;

namespace {
const Vocabulary digraph = Vocabulary::relational({2});
}

TEST_CASE("model enumeration counts 2^(kn)") {
  CHECK(enumerate_kripke(1, 2).size() == 4);
  CHECK(enumerate_kripke(2, 1).size() == 4);
  CHECK(enumerate_kripke(1, 3).size() == 8);
  std::size_t seen = 0;
  for (const auto& m : enumerate_kripke(2, 2)) {
    CHECK(m.n() == 2);
    ++seen;
  }
  CHECK(seen == 16);
}

TEST_CASE("classification") {
  const auto c = classify(parse_kripke("n=3; w1:p1; w2:p1; w3:!p1", 1));
  CHECK(c.type_set == TypeSet(0b11, 1));
  CHECK(c.counts == TypeCountVector({2, 1}));
  CHECK(c.counts.label() == "[2,1]");
  const auto same = classify(KripkeModel::from_masks(2, {3, 3, 3}));
  CHECK(same.type_set.size() == 1);
  CHECK(same.type_set.contains(3));
}

TEST_CASE("the type set is the support of the count vector") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const int k = 1 + static_cast<int>(rng() % 3);
    const int n = 1 + static_cast<int>(rng() % 6);
    std::vector<std::uint32_t> masks;
    for (int w = 0; w < n; ++w) masks.push_back(static_cast<std::uint32_t>(rng() % (1U << k)));
    const auto c = classify(KripkeModel::from_masks(k, masks));
    CHECK(c.counts.support() == c.type_set);
    CHECK(c.counts.n() == n);
  }
}

TEST_CASE("count vectors are compositions in descending first coordinate") {
  const auto v = count_vectors(1, 3);
  REQUIRE(v.size() == 4);
  CHECK(v.front() == TypeCountVector({3, 0}));
  CHECK(v.back() == TypeCountVector({0, 3}));
  CHECK(count_vectors(2, 4).size() == 35);
  for (const auto& c : count_vectors(2, 3)) CHECK(classify(representative(c)).counts == c);
}

TEST_CASE("Kripke text round-trips") {
  const auto m = parse_kripke("n=2; w1:p1,!p2; w2:!p1,p2", 2);
  CHECK(m.type_at(0).mask() == 0b10U);
  CHECK(m.type_at(1).mask() == 0b01U);
  CHECK(parse_kripke(format_kripke(m), 2) == m);
  CHECK_THROWS(parse_kripke("n=2; w1:p1", 1));
}

TEST_CASE("canonical form relabels to the least copy") {
  const auto loop2 = parse_structure("n=2; R1={(2,2)}", digraph);
  const auto loop1 = parse_structure("n=2; R1={(1,1)}", digraph);
  CHECK(canonical_form(loop2) == canonical_form(loop1));
  CHECK(canonical_form(loop2) == loop1);
}

TEST_CASE("canonical form is idempotent and an isomorphism invariant") {
  for_each_structure({2}, 3, [](const RelationalStructure& s) {
    const auto c = canonical_form(s);
    REQUIRE(canonical_form(c) == c);
    const int perm[] = {2, 0, 1};
    REQUIRE(canonical_form(s.permuted(perm)) == c);
  });
}

TEST_CASE("distinct canonical digraphs on three vertices") {
  std::set<RelationalStructure> seen;
  for_each_structure({2}, 3, [&](const RelationalStructure& s) { seen.insert(canonical_form(s)); });
  CHECK(seen.size() == 104);
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(parse_structure("n=2; R1={}", digraph)) == 2);
  CHECK(automorphism_count(parse_structure("n=2; R1={(1,1)}", digraph)) == 1);
  int rigid = 0, total = 0;
  for_each_structure({2}, 2, [&](const RelationalStructure& s) {
    ++total;
    rigid += is_rigid(s) ? 1 : 0;
  });
  CHECK(total == 16);
  CHECK(rigid == 12);
}

TEST_CASE("structure text round-trips") {
  const auto s = parse_structure("n=3; R1={(1,2),(2,3)}", digraph);
  const int t[] = {1, 2};
  CHECK(s.holds(0, t));
  CHECK(parse_structure(format_structure(s), digraph) == s);
}

TEST_CASE("enumeration caps") {
  CHECK_THROWS(for_each_structure({2}, 5, [](const RelationalStructure&) {}));
}
