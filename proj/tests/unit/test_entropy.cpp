#include <doctest.h>

#include <cmath>

#include "dcx/entropy.hpp"
#include "dcx/models.hpp"

using namespace dcx;

namespace {

BigInt total(const Partition& p) {
  BigInt t = 0;
  for (const auto& c : p.classes) t += c.size;
  return t;
}

const BigInt* size_of(const Partition& p, const std::string& label) {
  for (const auto& c : p.classes)
    if (c.label == label) return &c.size;
  return nullptr;
}

}  // namespace

TEST_CASE("MLU class sizes by inclusion-exclusion") {
  const auto p = mlu_partition(1, 3);
  REQUIRE(p.classes.size() == 3);
  CHECK(*size_of(p, "{+,-}") == 6);
  CHECK(*size_of(p, "{+}") == 1);
  CHECK(*size_of(p, "{-}") == 1);
  CHECK(total(p) == 8);
  CHECK(mlu_partition(2, 5).classes.size() == 15);
}

TEST_CASE("MLU sizes agree with enumeration") {
  for (int k = 1; k <= 2; ++k)
    for (int n = 1; n <= 4; ++n) {
      const auto p = mlu_partition(k, n);
      std::map<std::string, BigInt> seen;
      for (const auto& m : enumerate_kripke(k, n)) seen[classify(m).type_set.label()] += 1;
      for (const auto& c : p.classes) CHECK(seen[c.label] == c.size);
    }
}

TEST_CASE("GMLU class sizes are multinomials") {
  CHECK(multinomial({1, 2}) == 3);
  CHECK(multinomial({4, 0}) == 1);
  CHECK(multinomial({1, 1, 1, 1}) == 24);
  CHECK(surjection_count(2, 3) == 6);
  for (int k = 1; k <= 3; ++k)
    for (int n = 1; n <= 30; n += 7) {
      CHECK(total(gmlu_partition(k, n)) == pow2(static_cast<unsigned long>(k * n)));
      CHECK(total(mlu_partition(k, n)) == pow2(static_cast<unsigned long>(k * n)));
    }
}

TEST_CASE("entropy of the two-world one-proposition universe") {
  const auto s = entropy_stats(gmlu_partition(1, 2));
  CHECK(s.shannon_bits == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(s.expected_boltzmann_bits == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(s.log_universe_bits == doctest::Approx(2.0));
  CHECK(std::abs(s.identity_residual()) < 1e-12);
}

TEST_CASE("degenerate partitions") {
  Partition one{Dialect::gmlu, 1, 3, 8, {{"all", 8}}};
  const auto a = entropy_stats(one);
  CHECK(a.shannon_bits == doctest::Approx(0.0));
  CHECK(a.expected_boltzmann_bits == doctest::Approx(3.0));
  Partition singletons{Dialect::gmlu, 1, 2, 4, {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}}};
  const auto b = entropy_stats(singletons);
  CHECK(b.shannon_bits == doctest::Approx(2.0));
  CHECK(b.expected_boltzmann_bits == doctest::Approx(0.0));
}

TEST_CASE("class statistics") {
  for (const auto& c : class_stats(gmlu_partition(2, 4))) {
    CHECK(c.boltzmann_bits == doctest::Approx(std::log2(to_double(c.size))).epsilon(1e-9));
    CHECK(c.probability == Rational(c.size, pow2(8)));
  }
}

TEST_CASE("Boltzmann ratio trend") {
  const double a = expected_boltzmann_ratio(1, 10);
  const double b = expected_boltzmann_ratio(1, 20);
  const double c = expected_boltzmann_ratio(1, 30);
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c >= 0.85);
}

TEST_CASE("I_delta mass") {
  CHECK(i_delta_mass(1, 7, 1.0) == Rational(1));
  CHECK(i_delta_mass(2, 5, 1.5) == Rational(1));
  Rational prev(0);
  for (double d : {0.01, 0.05, 0.1, 0.2, 0.5}) {
    const auto m = i_delta_mass(1, 20, d);
    CHECK(m >= prev);
    prev = m;
  }
  // Window edges are strict: at n=10 only n_1 = 5 lies within 1/10 of 1/2.
  CHECK(i_delta_mass(1, 10, 0.1) == Rational(252, 1024));
  const int t = i_delta_threshold(1, 0.1, Rational(9, 10), 200);
  REQUIRE(t > 0);
  CHECK(i_delta_mass(1, t, 0.1) > Rational(9, 10));
  CHECK_FALSE(i_delta_mass(1, t - 1, 0.1) > Rational(9, 10));
}

TEST_CASE("f_delta") {
  for (int k = 1; k <= 3; ++k) {
    CHECK(f_delta(k, 0.0) == static_cast<double>(k));
    CHECK(std::abs(f_delta(k, 1e-6) - k) < 1e-4);
    CHECK(f_delta(k, 0.01) < k);
  }
}

TEST_CASE("missing-type probability") {
  CHECK(missing_type_probability(1, 1).exact == Rational(1));
  CHECK(missing_type_probability(1, 3).exact == Rational(1, 4));
  for (int k = 1; k <= 3; ++k)
    for (int n = 1; n <= 20; ++n) {
      const auto m = missing_type_probability(k, n);
      CHECK(to_double(m.exact) <= m.union_bound + 1e-12);
    }
}

TEST_CASE("Stirling gap") {
  CHECK(stirling_gap(2) == doctest::Approx(1.0 - (2.0 - 2.0 * std::log2(std::exp(1.0)))).epsilon(1e-12));
  CHECK(stirling_gap(2) == doctest::Approx(1.885).epsilon(1e-3));
  for (int n : {2, 3, 10, 100, 1000, 100000}) CHECK(stirling_gap(n) > 0);
  for (int n : {4, 5, 16, 100, 1000, 12345, 100000, 1000000}) {
    const double ratio = stirling_gap(n) / std::log2(n);
    CHECK(ratio >= 0.4);
    CHECK(ratio <= 2.0);
  }
}

TEST_CASE("per-element rewriting of <H_B> is off by O(log n)") {
  for (int n = 2; n <= 30; ++n) {
    const double gap = per_element_rewrite_gap(1, n);
    CHECK(std::abs(gap) <= 2.0 * std::log2(n) + 1.0);
  }
}

TEST_CASE("law of large numbers demo") {
  CHECK(lln_demo(1, 500, 20, 9) == lln_demo(1, 500, 20, 9));
  CHECK(lln_demo(1, 10000, 100, 1) < 0.02);
}

TEST_CASE("the full type set eventually dominates the MLU classes") {
  const int t = largest_class_threshold(1, 40);
  CHECK(t > 0);
  CHECK(t <= 40);
}
