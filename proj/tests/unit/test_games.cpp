#include <doctest.h>

#include <algorithm>
#include <random>
#include <regex>

#include "dcx/bitvec.hpp"
#include "dcx/complexity.hpp"
#include "dcx/errors.hpp"
#include "dcx/games.hpp"

using namespace dcx;

namespace {

KripkeModel uniform(int k, int n, std::uint32_t mask) {
  return KripkeModel::from_masks(k, std::vector<std::uint32_t>(static_cast<std::size_t>(n), mask));
}

GamePosition random_position(std::mt19937_64& rng, int k, int fixed_n, int max_r) {
  GamePosition p;
  p.r = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_r));
  const auto na = 1 + rng() % 3, nb = 1 + rng() % 3;
  for (std::uint64_t j = 0; j < na + nb; ++j) {
    const int n = fixed_n > 0 ? fixed_n : 1 + static_cast<int>(rng() % 3);
    std::vector<std::uint32_t> masks;
    for (int w = 0; w < n; ++w) masks.push_back(static_cast<std::uint32_t>(rng() % (1U << k)));
    KripkeModel m = KripkeModel::from_masks(k, masks);
    const int point = static_cast<int>(rng() % static_cast<unsigned>(n));
    (j < na ? p.a : p.b).push_back({std::move(m), point});
  }
  return p;
}

// Does a separating formula of size <= r exist? Pairs as in the game.
bool dp_separates(const GamePosition& p, int max_grade) {
  std::vector<TypeCountVector> models;
  for (const auto* side : {&p.a, &p.b})
    for (const auto& pm : *side) {
      auto c = classify(pm.model).counts;
      if (std::find(models.begin(), models.end(), c) == models.end()) models.push_back(c);
    }
  ModalDp dp(models, max_grade);
  const auto bits = [&](const std::vector<PointedModel>& side) {
    BitVec b;
    for (const auto& pm : side) {
      const auto c = classify(pm.model).counts;
      const auto m = static_cast<std::size_t>(std::find(models.begin(), models.end(), c) - models.begin());
      b.set(static_cast<std::size_t>(dp.pair_index(m, pm.model.type_at(pm.point).mask())));
    }
    return b;
  };
  return dp.separating(bits(p.a), bits(p.b), p.r).has_value();
}

std::vector<int> realized_weights(const TypeCountVector& c) {
  std::vector<int> w;
  for (int v : c.realized()) w.push_back(c[static_cast<std::size_t>(v)]);
  return w;
}

}  // namespace

TEST_CASE("missing-type instance shape") {
  const auto one = build_missing_type_instance(1);
  CHECK(one.variants.size() == 2);
  const auto two = build_missing_type_instance(2);
  CHECK(two.variants.size() == 4);
  for (const auto* inst : {&one, &two}) {
    CHECK(classify(inst->base).type_set.size() == (1 << inst->k));
    for (std::size_t i = 0; i < inst->variants.size(); ++i) {
      const auto ts = classify(inst->variants[i]).type_set;
      CHECK(ts.size() == (1 << inst->k) - 1);
      CHECK_FALSE(ts.contains(static_cast<std::uint32_t>(i)));
    }
  }
  CHECK_THROWS(build_missing_type_instance(3));
}

TEST_CASE("FS on the missing-type instance") {
  const auto inst = build_missing_type_instance(1);
  CHECK(solve_fs(inst.start(4), 1).winner == Player::delilah);
  CHECK(solve_fs(inst.start(5), 1).winner == Player::samson);
}

TEST_CASE("FS separates all-p from all-not-p with a modality and a literal") {
  GamePosition p{2, {{uniform(1, 2, 0), 0}}, {{uniform(1, 2, 1), 0}}, false};
  CHECK(solve_fs(p, 1).winner == Player::samson);
  p.r = 1;
  CHECK(solve_fs(p, 1).winner == Player::delilah);
}

TEST_CASE("strict literal rule only counts diamond moves") {
  // Only a box separates here: the mixed model satisfies every diamond the all-p one does.
  GamePosition p{2, {{uniform(1, 2, 0), 0}}, {{KripkeModel::from_masks(1, {0, 1}), 0}}, false};
  CHECK(solve_fs(p, 1).winner == Player::samson);
  GameOptions strict;
  strict.strict_literal_rule = true;
  CHECK(solve_fs(p, 1, strict).winner == Player::delilah);
}

TEST_CASE("traces follow the ply format") {
  GameOptions o;
  o.record_trace = true;
  const auto res = solve_fs(build_missing_type_instance(1).start(5), 1, o);
  REQUIRE_FALSE(res.trace.empty());
  const std::regex line(R"(r=\d+ \| move=(OR|AND|DIAMOND|BOX|LIT).*)");
  for (const auto& l : res.trace) CHECK(std::regex_match(l, line));
}

TEST_CASE("count instance shape") {
  const auto inst = build_count_instance(TypeCountVector({2, 1}));
  CHECK(inst.variants.size() == 2);
  for (const auto& v : inst.variants) {
    const auto c = classify(v).counts;
    CHECK(std::abs(c[0] - 2) + std::abs(c[1] - 1) == 2);  // one point moved
    CHECK(v.type_at(0) == inst.base.type_at(0));
  }
  CHECK(build_count_instance(TypeCountVector({2, 1, 1, 0})).variants.size() == 6);
  CHECK_THROWS_AS(build_count_instance(TypeCountVector({1, 1})), DomainError);
  CHECK(solve_fsc(inst.start(1), 1, 3).winner == Player::delilah);
}

TEST_CASE("hardness of the starting position and its variants") {
  const HardPosition p0{5, 0b1, 0b0101, false};
  const auto rep = hardness(p0, 1);
  CHECK(rep.total == 5);
  CHECK(rep.kind == std::vector<int>{1, 1});
  const HardPosition empty{1, 0b1, 0, true};
  CHECK(hardness(empty, 1).total == -1);
  CHECK(hardness(empty, 1).kind == std::vector<int>{4, 4});
  // A box move lets S keep only the points it names, here all of them.
  const HardPosition after_box{4, 0b11, 0b1111, true};
  const auto b = hardness(after_box, 1);
  CHECK(b.kind == std::vector<int>{2, 2});
  CHECK(b.h == std::vector<int>{2, 2});
  const HardPosition p2{19, 0b1, 0x1111, false};
  CHECK(hardness(p2, 2).total == 2 * 2 * 4 + 4 - 1);
}

TEST_CASE("cover costs") {
  const auto g = complete_cover_graph(TypeCountVector({2, 1}));
  CHECK(min_cover_cost(g, {2, 1}).cost == 2);
  CHECK(min_cover_cost(CoverGraph{{0, 1}, {}}, {2, 1}).cost == 0);
  CHECK(min_cover_cost(CoverGraph{{0, 1}, {}}, {2, 1}).mask == 0);
  CHECK(min_cover_cost(CoverGraph{{0, 1}, {{0, 1}}}, {2, 3}).cost == 2);
  CHECK(min_cover_cost(CoverGraph{{0, 1}, {{0, 1}}}, {5, 3}).cost == 3);
  CHECK_THROWS(min_cover_cost(CoverGraph{{0}, {{0, 0}}}, {1}));
}

TEST_CASE("cover cost of the complete graph is min(n, 2(n - largest))") {
  for (int k = 1; k <= 2; ++k)
    for (int n = 2; n <= 6; ++n)
      for (const auto& c : count_vectors(k, n)) {
        if (c[static_cast<std::size_t>(c.largest())] < 2) continue;
        CHECK(min_cover_cost(complete_cover_graph(c), realized_weights(c)).cost == sandwich_lower_bound(c));
      }
}

TEST_CASE("adding edges never lowers the cover cost") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    CoverGraph g{{0, 1, 2, 3}, {}};
    std::vector<int> w{1 + int(rng() % 4), 1 + int(rng() % 4), 1 + int(rng() % 4), 1 + int(rng() % 4)};
    int prev = 0;
    for (int e = 0; e < 6; ++e) {
      const int i = int(rng() % 4), j = int(rng() % 4);
      if (i == j) continue;
      g.edges.emplace_back(i, j);
      const int c = min_cover_cost(g, w).cost;
      CHECK(c >= prev);
      prev = c;
    }
  }
}

TEST_CASE("strategy certificates") {
  const auto h = verify_d_strategy({DStrategy::hardness, 1, std::nullopt}, 4);
  CHECK(h.valid);
  CHECK(h.positions > 0);
  const auto bad = verify_d_strategy({DStrategy::hardness, 1, std::nullopt}, 5);
  CHECK_FALSE(bad.valid);
  CHECK(bad.violation.find("r < h") != std::string::npos);
  CHECK(bad.path.empty());
  const auto c = verify_d_strategy({DStrategy::cover, 1, TypeCountVector({2, 1})}, 1);
  CHECK(c.valid);
  for (const auto& cls : count_vectors(1, 3)) {
    if (cls[static_cast<std::size_t>(cls.largest())] < 2 || cls.realized().size() < 2) continue;
    const int big_r = min_cover_cost(complete_cover_graph(cls), realized_weights(cls)).cost;
    CHECK(verify_d_strategy({DStrategy::cover, 1, cls}, big_r - 1).valid);
  }
}

TEST_CASE("pruned and unpruned solvers agree") {
  std::mt19937_64 rng(21);
  GameOptions slow;
  slow.prune_splits = false;
  slow.prune_choices = false;
  for (int i = 0; i < 50; ++i) {
    const int k = 1 + static_cast<int>(rng() % 2);
    const auto p = random_position(rng, k, 0, 5);
    CHECK(solve_fs(p, k).winner == solve_fs(p, k, slow).winner);
    const auto q = random_position(rng, 1, 3, 5);
    CHECK(solve_fsc(q, 1, 3).winner == solve_fsc(q, 1, 3, slow).winner);
  }
}

TEST_CASE("FS winner matches MLU formula existence") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    const int k = 1 + static_cast<int>(rng() % 2);
    const auto p = random_position(rng, k, 0, 7);
    CHECK((solve_fs(p, k).winner == Player::samson) == dp_separates(p, 1));
  }
}

TEST_CASE("FSc winner matches GMLU formula existence") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const int n = 1 + static_cast<int>(rng() % 3);
    const auto p = random_position(rng, 1, n, 7);
    CHECK((solve_fsc(p, 1, n).winner == Player::samson) == dp_separates(p, n + 1));
  }
}

TEST_CASE("FSc agrees with the exact class sizes") {
  // S wins from the count instance exactly when r reaches a separating size.
  const TypeCountVector c({2, 1});
  const auto inst = build_count_instance(c);
  CHECK(solve_fsc(inst.start(1), 1, 3).winner == Player::delilah);
  bool found = false;
  for (int r = 1; r <= 6 && !found; ++r) found = solve_fsc(inst.start(r), 1, 3).winner == Player::samson;
  CHECK(found);
}
