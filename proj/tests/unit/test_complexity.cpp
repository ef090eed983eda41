#include <doctest.h>

#include <map>

#include "dcx/complexity.hpp"
#include "dcx/errors.hpp"
#include "dcx/semantics.hpp"

using namespace dcx;

namespace {

Denotation only(std::size_t size, std::initializer_list<std::size_t> bits) {
  Denotation d(size);
  for (auto b : bits) d.set(b);
  return d;
}

// Every well-formed formula of each size, built explicitly: modal bodies may
// mix literals and modalities, as the grammar allows.
std::vector<std::vector<Formula>> all_formulas(int k, int max_grade, int budget) {
  std::vector<std::vector<Formula>> by(static_cast<std::size_t>(budget) + 1);
  for (int p = 0; p < k; ++p)
    for (bool pos : {true, false}) by[1].push_back(Formula::literal(p, pos));
  for (int s = 2; s <= budget; ++s) {
    auto& row = by[static_cast<std::size_t>(s)];
    for (int l = 1; l <= s - 2; ++l)
      for (const auto& a : by[static_cast<std::size_t>(l)])
        for (const auto& b : by[static_cast<std::size_t>(s - 1 - l)]) {
          row.push_back(Formula::conjunction(a, b));
          row.push_back(Formula::disjunction(a, b));
        }
    for (int d = 1; d <= std::min(max_grade, s - 1); ++d)
      for (const auto& c : by[static_cast<std::size_t>(s - d)]) {
        row.push_back(Formula::diamond(d, c));
        row.push_back(Formula::box(d, c));
      }
  }
  return by;
}

// Smallest defining size of every definable class set, by brute force.
std::map<std::vector<bool>, int> brute_minima(const ClassUniverse& u, int max_grade, int budget) {
  std::map<std::vector<bool>, int> best;
  const auto by = all_formulas(u.k(), max_grade, budget);
  for (int s = 1; s <= budget; ++s)
    for (const auto& f : by[static_cast<std::size_t>(s)]) {
      if (!is_guarded(f)) continue;
      std::vector<bool> key;
      for (const auto& c : u.count_classes()) key.push_back(eval_counts(c, f));
      best.try_emplace(key, s);
    }
  return best;
}

Denotation to_denotation(const std::vector<bool>& v) {
  Denotation d(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) d[i] = v[i];
  return d;
}

}  // namespace

TEST_CASE("the full type set needs five symbols in MLU with one proposition") {
  for (int n = 2; n <= 4; ++n) {
    const auto u = ClassUniverse::mlu(1, n);
    const auto w = min_size_mlu(1, n, only(u.size(), {u.index_of(TypeSet(0b11, 1))}), 10);
    REQUIRE(w);
    CHECK(w->size == 5);
  }
}

TEST_CASE("classes containing the positive type") {
  const auto u = ClassUniverse::mlu(1, 2);
  const auto w = min_size_mlu(1, 2, only(u.size(), {u.index_of(TypeSet(0b01, 1)), u.index_of(TypeSet(0b11, 1))}), 6);
  REQUIRE(w);
  CHECK(w->size == 2);
  CHECK(w->text == "<1>p1");
}

TEST_CASE("budget one defines nothing") {
  const auto u = ClassUniverse::mlu(1, 2);
  CHECK_FALSE(min_size_mlu(1, 2, only(u.size(), {0}), 1));
  const auto g = ClassUniverse::gmlu(1, 3);
  CHECK_FALSE(min_size_gmlu(1, 3, only(g.size(), {1, 2}), 1));
}

TEST_CASE("GMLU minima at three worlds") {
  const auto u = ClassUniverse::gmlu(1, 3);
  const auto all_p = min_size_gmlu(1, 3, only(u.size(), {u.index_of(TypeCountVector({3, 0}))}), 10);
  REQUIRE(all_p);
  CHECK(all_p->size == 2);
  CHECK(all_p->formula.kind() == NodeKind::box);
  const auto mixed = min_size_gmlu(1, 3, only(u.size(), {u.index_of(TypeCountVector({2, 1}))}), 10);
  REQUIRE(mixed);
  CHECK(mixed->size == 6);
}

TEST_CASE("witnesses denote their targets") {
  const auto u = ClassUniverse::gmlu(1, 3);
  for (unsigned bits = 1; bits < 15; ++bits) {
    Denotation target(u.size(), bits);
    const auto w = min_size_gmlu(1, 3, target, 12);
    REQUIRE(w);
    CHECK(denotation(w->formula, u) == target);
    CHECK(size(w->formula) == w->size);
  }
  const auto m = ClassUniverse::mlu(2, 2);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto w = min_size_mlu(2, 2, only(m.size(), {i}), 18);
    REQUIRE(w);
    CHECK(denotation(w->formula, m) == only(m.size(), {i}));
  }
}

TEST_CASE("DP minima match brute-force enumeration") {
  for (int n = 2; n <= 3; ++n) {
    const auto u = ClassUniverse::gmlu(1, n);
    const int budget = 7;
    const auto brute = brute_minima(u, n + 1, budget);
    for (unsigned bits = 0; bits < (1U << u.size()); ++bits) {
      Denotation target(u.size(), bits);
      std::vector<bool> key;
      for (std::size_t i = 0; i < u.size(); ++i) key.push_back(target[i]);
      const auto w = min_size_gmlu(1, n, target, budget);
      const auto it = brute.find(key);
      if (it == brute.end()) {
        CHECK_FALSE(w);
      } else {
        REQUIRE(w);
        CHECK(w->size == it->second);
      }
    }
    for (const auto& [key, s] : brute) CHECK(min_size_gmlu(1, n, to_denotation(key), budget)->size == s);
  }
  const auto m = ClassUniverse::mlu(1, 3);
  const auto brute = brute_minima(m, 1, 8);
  for (const auto& [key, s] : brute) CHECK(min_size_mlu(1, 3, to_denotation(key), 8)->size == s);
}

TEST_CASE("type-set constructions") {
  CHECK(phi_pi_size(1, TypeSet(0b01, 1)) == 5);
  CHECK(phi_pi_size(1, TypeSet(0b11, 1)) == 5);
  CHECK(phi_pi_size(2, TypeSet::all(2)) == 19);
  CHECK(size(construct_phi_pi(2, TypeSet(0b0110, 2))) == 2 * 8 + 2);
  const auto u = ClassUniverse::mlu(2);
  for (std::size_t i = 0; i < u.size(); ++i)
    CHECK(denotation(construct_phi_pi(2, u.type_sets()[i]), u) == only(u.size(), {i}));
}

TEST_CASE("count constructions") {
  const TypeCountVector c({2, 1});
  CHECK(render(construct_phi1(c)) == "<2>p1 & <1>!p1");
  CHECK(phi1_size(c) == 6);
  CHECK(render(construct_phi1(TypeCountVector({4, 0}))) == "<4>p1");
  CHECK(phi1_size(TypeCountVector({4, 0})) == 5);
  for (int n = 2; n <= 5; ++n) {
    const auto u = ClassUniverse::gmlu(1, n);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto& cls = u.count_classes()[i];
      CHECK(size(construct_phi1(cls)) == phi1_size(cls));
      CHECK(size(construct_phi2(cls)) == phi2_size(cls));
      CHECK(denotation(construct_phi1(cls), u) == only(u.size(), {i}));
      CHECK(denotation(construct_phi2(cls), u) == only(u.size(), {i}));
    }
  }
  CHECK(sandwich_lower_bound(c) == 2);
}

TEST_CASE("exact sizes sit inside the sandwich") {
  for (int n = 2; n <= 4; ++n) {
    const auto u = ClassUniverse::gmlu(1, n);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const auto& cls = u.count_classes()[i];
      const auto w = min_size_gmlu(1, n, only(u.size(), {i}), 14);
      REQUIRE(w);
      CHECK(sandwich_lower_bound(cls) <= w->size);
      CHECK(w->size <= std::min(phi1_size(cls), phi2_size(cls)));
    }
  }
}

TEST_CASE("first-order minima") {
  const auto u = ClassUniverse::fo({2}, 1);
  const Vocabulary v = Vocabulary::relational({2});
  const auto loop = u.index_of(parse_structure("n=1; R1={(1,1)}", v));
  const auto w = min_size_fo({2}, 1, only(u.size(), {loop}), 4);
  REQUIRE(w);
  CHECK(w->size == 2);
  CHECK(denotation(w->formula, u) == only(u.size(), {loop}));
  const auto all = min_size_fo({2}, 1, only(u.size(), {0, 1}), 4);
  REQUIRE(all);
  CHECK(all->size == 2);
  CHECK_FALSE(min_size_fo({2}, 1, only(u.size(), {loop}), 1));
}

TEST_CASE("search caps") {
  const auto u = ClassUniverse::gmlu(1, 7);
  CHECK_THROWS_AS(min_size_gmlu(1, 7, Denotation(u.size()), 5), CapExceeded);
}
