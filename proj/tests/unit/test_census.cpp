#include <doctest.h>

#include <cmath>

#include "dcx/census.hpp"
#include "dcx/errors.hpp"

using namespace dcx;

TEST_CASE("digraph isomorphism counts") {
  const long expected[] = {2, 10, 104, 3044};
  for (int n = 1; n <= 4; ++n) CHECK(iso_count_burnside({2}, n) == expected[n - 1]);
  for (int n = 1; n <= 3; ++n) CHECK(iso_count_exhaustive({2}, n) == iso_count_burnside({2}, n));
  CHECK(iso_count_exhaustive({1, 2}, 2) == iso_count_burnside({1, 2}, 2));
  CHECK(iso_count_exhaustive({1}, 4) == 5);  // subsets up to size
}

TEST_CASE("labeled counts and rigidity") {
  const auto rows = census({2}, 5);
  REQUIRE(rows.size() == 5);
  CHECK(rows[2].labeled == 512);
  REQUIRE(rows[1].rigid_labeled);
  CHECK(*rows[1].rigid_labeled == 12);
  REQUIRE(rows[2].rigid_labeled);
  CHECK(*rows[2].rigid_labeled == 420);
  CHECK(rows[1].rigid_fraction() == doctest::Approx(0.75));
  CHECK(rows[2].rigid_fraction() > rows[1].rigid_fraction());
  REQUIRE(rows[3].rigid_labeled);
  CHECK(rows[3].rigid_fraction() > rows[2].rigid_fraction());
  CHECK_FALSE(rows[4].rigid_labeled.has_value());  // 25 cells: beyond exhaustive enumeration
  CHECK(std::isnan(rows[4].rigid_fraction()));
}

TEST_CASE("orbit-stabilizer sanity and the Fagin ratio") {
  const auto rows = census({2}, 5);
  for (const auto& r : rows) {
    CHECK(r.iso * factorial(r.n) >= r.labeled);
    CHECK(r.fagin_ratio() >= 1.0);
  }
  CHECK(rows[0].fagin_ratio() == doctest::Approx(1.0));
  for (std::size_t i = 2; i < rows.size(); ++i) CHECK(rows[i].fagin_ratio() < rows[i - 1].fagin_ratio());
  // Equality exactly when every structure is rigid: never the case for n >= 2.
  CHECK(rows[1].iso * factorial(2) > rows[1].labeled);
}

TEST_CASE("sentence count bound") {
  CHECK(sentence_count_bound({2}, 2, 2) == pow2(60));
  CHECK(sentence_count_bound({2}, 2, 3) > sentence_count_bound({2}, 2, 2));
  CHECK(sentence_count_bound({2}, 3, 2) > sentence_count_bound({2}, 2, 2));
  CHECK_THROWS_AS(sentence_count_bound({2}, 2, 1), DomainError);
}

TEST_CASE("sentence counting by DP matches explicit enumeration") {
  for (int s = 1; s <= 5; ++s) CHECK(count_fo_sentences({2}, 2, s) == enumerate_fo_sentences({2}, 2, s));
  for (int s = 1; s <= 4; ++s) CHECK(count_fo_sentences({1, 2}, 1, s) == enumerate_fo_sentences({1, 2}, 1, s));
  CHECK(count_fo_sentences({2}, 2, 4) <= sentence_count_bound({2}, 2, 4));
}

TEST_CASE("ratio test") {
  const auto r = ratio_test({2}, 64, 0.01, 2);
  CHECK(r.exponent == doctest::Approx(0.2 + 6.0 / 64 - 1));
  CHECK(r.base < 1.0);
  CHECK(std::abs(ratio_test({2}, 1'000'000, 0.01, 2).base - std::exp2(0.2 - 1)) < 1e-3);
  CHECK(ratio_test({2}, 64, 0.2, 1).base > 1.0);
}

TEST_CASE("entropy and complexity bound curves") {
  const auto p = bound_point(2, 0.1, 4);
  CHECK(p.hb_upper == doctest::Approx(8 - 4 * std::log2(std::exp(1.0)) + 4));
  CHECK(p.hb_upper >= std::log2(24.0));
  const auto rep = bounds_compare(2, 0.1, 2, 1'000'000, {1000, 1'000'000});
  REQUIRE(rep.crossover);
  const auto& lo = rep.rows[0];
  const auto& hi = rep.rows[1];
  CHECK(hi.c_lower / hi.hb_upper > lo.c_lower / lo.hb_upper);
  const auto before = bound_point(2, 0.1, *rep.crossover - 1);
  CHECK(before.c_lower <= before.hb_upper);
  CHECK_THROWS(bounds_compare(2, 0.1, 10, 5, {}));
}
