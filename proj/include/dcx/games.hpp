// Formula size games for MLU (FS) and GMLU (FSc), the hard instances used
// for lower bounds, and verifiers for Delilah's invariant-keeping strategies.
//
// The solvers work on (model, point type) pairs: isomorphic models merge, and
// points of the same type within a model are interchangeable. The verifiers
// work on explicit worlds, since the invariants name individual points.

#ifndef DCX_GAMES_HPP
#define DCX_GAMES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dcx/models.hpp"

namespace dcx {

enum class Player { samson, delilah };
std::string_view to_string(Player p);

struct GamePosition {
  int r = 1;
  std::vector<PointedModel> a;
  std::vector<PointedModel> b;
  // Literal moves need an earlier modal move.
  bool modal_move_made = false;
};

struct GameOptions {
  // Only a diamond move (not a box move) unlocks literal moves.
  bool strict_literal_rule = false;
  // Split moves enumerate partitions instead of all covering pairs.
  bool prune_splits = true;
  // Graded moves only offer inclusion-minimal type choices.
  bool prune_choices = true;
  bool record_trace = false;
  std::size_t max_positions = 5'000'000;
};

struct GameResult {
  Player winner = Player::delilah;
  std::size_t positions = 0;
  // One line per ply, e.g. "r=4 | move=OR r1=1 r2=2 | D->left".
  std::vector<std::string> trace;
};

// Pre: at most 12 pointed models, r <= 10.
GameResult solve_fs(const GamePosition& start, int k, GameOptions options = {});
// Grades 1..n+1; every model has n worlds.
GameResult solve_fsc(const GamePosition& start, int k, int n, GameOptions options = {});

// ------------------------------------------------------------- instances

// Base model realizing every type once (world i has type mask i) and, for each
// type i, a copy that lacks type i: world i takes type 0, or type 1 when i = 0.
struct HardInstance {
  int k = 1;
  KripkeModel base;
  std::vector<KripkeModel> variants;  // variant i lacks type i
  GamePosition start(int r) const;
};

HardInstance build_missing_type_instance(int k);

// Base model of the class with the most frequent type on worlds 1 and 2, and
// for each ordered pair (i, j) of distinct realized types the copy whose last
// world of type i is retyped to j.
struct CountInstance {
  TypeCountVector counts;
  KripkeModel base;
  std::vector<std::pair<int, int>> moves;  // (i, j) per variant
  std::vector<KripkeModel> variants;
  GamePosition start(int r) const;
};

// Throws DomainError unless some type is realized at least twice.
CountInstance build_count_instance(const TypeCountVector& counts);

// ------------------------------------------------------------- hardness

// World-level position of the hard instance: `a` holds worlds of the base
// model, bit (i * 2^k + w) of `b` holds world w of variant i.
struct HardPosition {
  int r = 1;
  std::uint32_t a = 0;
  std::uint64_t b = 0;
  bool modal_move_made = false;
};

struct HardnessReport {
  std::vector<int> kind;  // 1..4 per type
  std::vector<int> h;     // per type
  int poshard = 0;
  int total = 0;          // sum h + poshard - 1
};

HardnessReport hardness(const HardPosition& p, int k);

// ----------------------------------------------------------------- cover

struct CoverGraph {
  std::vector<int> vertices;  // realized type indices
  std::vector<std::pair<int, int>> edges;
};

// Bit 2t: vertex t taken positively; bit 2t+1: taken negatively (t indexes `vertices`).
struct Cover {
  int cost = 0;
  std::uint64_t mask = 0;
  std::string label;  // e.g. "{0+,1-}"
};

// Cheapest cover; weights[v] is the cost of either sign of vertex v. Ties go
// to the smallest mask.
Cover min_cover_cost(const CoverGraph& g, const std::vector<int>& weights);

// Complete irreflexive graph on the realized types of `counts`.
CoverGraph complete_cover_graph(const TypeCountVector& counts);

// ---------------------------------------------------------- verification

enum class DStrategy { hardness, cover };
std::string_view to_string(DStrategy s);

struct StrategyInstance {
  DStrategy strategy = DStrategy::hardness;
  int k = 1;
  std::optional<TypeCountVector> counts;  // cover strategy only
};

struct Certificate {
  DStrategy strategy = DStrategy::hardness;
  int r = 0;
  bool valid = false;
  std::size_t positions = 0;      // distinct positions reached
  std::size_t samson_moves = 0;   // S moves explored
  std::size_t delilah_choices = 0;
  std::size_t terminal_moves = 0; // moves that end the game for D at once
  std::string violation;          // empty when valid
  std::vector<std::string> path;  // moves leading to the violation
};

Certificate verify_d_strategy(const StrategyInstance& instance, int r, GameOptions options = {});

}  // namespace dcx

#endif  // DCX_GAMES_HPP
