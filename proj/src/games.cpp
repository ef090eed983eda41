#include "dcx/games.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "dcx/bitvec.hpp"
#include "dcx/errors.hpp"

namespace dcx {

std::string_view to_string(Player p) { return p == Player::samson ? "S" : "D"; }

std::string_view to_string(DStrategy s) {
  return s == DStrategy::hardness ? "hardness" : "cover";
}

namespace {

std::string literal_text(int prop, bool positive) {
  return (positive ? "p" : "!p") + std::to_string(prop + 1);
}

// -------------------------------------------------------------- pair game

struct PairPos {
  int r;
  BitVec a;
  BitVec b;
  bool flag;
  friend bool operator==(const PairPos&, const PairPos&) = default;
};

struct PairPosHash {
  std::size_t operator()(const PairPos& p) const {
    return p.a.hash() * 1000003U ^ p.b.hash() * 31U ^ static_cast<std::size_t>(p.r * 2 + p.flag);
  }
};

enum class MoveKind { literal, disjunction, conjunction, diamond, box };

struct PairMove {
  MoveKind kind;
  int r1 = 0, r2 = 0, d = 0, prop = 0;
  bool positive = true;
  PairPos first{};
  PairPos second{};
};

std::string describe(const PairMove& m) {
  switch (m.kind) {
    case MoveKind::literal: return "move=LIT " + literal_text(m.prop, m.positive);
    case MoveKind::disjunction:
      return "move=OR r1=" + std::to_string(m.r1) + " r2=" + std::to_string(m.r2);
    case MoveKind::conjunction:
      return "move=AND r1=" + std::to_string(m.r1) + " r2=" + std::to_string(m.r2);
    case MoveKind::diamond: return "move=DIAMOND d=" + std::to_string(m.d);
    case MoveKind::box: return "move=BOX d=" + std::to_string(m.d);
  }
  return {};
}

class PairGame {
 public:
  PairGame(const GamePosition& start, int k, int max_grade, GameOptions options)
      : k_(k), max_grade_(max_grade), options_(options) {
    if (start.a.size() + start.b.size() > 12) throw CapExceeded("game solver limited to 12 pointed models");
    if (start.r < 1 || start.r > 10) throw CapExceeded("game solver limited to 1 <= r <= 10");
    for (const auto* side : {&start.a, &start.b})
      for (const auto& pm : *side) {
        if (pm.model.k() != k) throw DomainError("pointed model over a different vocabulary");
        if (pm.point < 0 || pm.point >= pm.model.n()) throw DomainError("point outside the model");
        const TypeCountVector c = classify(pm.model).counts;
        if (std::find(models_.begin(), models_.end(), c) == models_.end()) models_.push_back(c);
      }
    for (std::size_t m = 0; m < models_.size(); ++m) {
      const std::size_t lo = pair_mask_.size();
      for (int t : models_[m].realized()) {
        pair_mask_.push_back(static_cast<std::uint32_t>(t));
        pair_model_.push_back(m);
      }
      range_.emplace_back(lo, pair_mask_.size());
    }
    if (pair_mask_.size() > BitVec::kCapacity) throw CapExceeded("game solver: too many pairs");
    root_ = {start.r, side_bits(start.a), side_bits(start.b), start.modal_move_made};
  }

  const PairPos& root() const { return root_; }
  std::size_t positions() const { return memo_.size(); }

  bool wins(const PairPos& p) {
    if (auto it = memo_.find(p); it != memo_.end()) return it->second;
    if (memo_.size() >= options_.max_positions) throw CapExceeded("game solver position cap reached");
    const bool result = for_each_move(p, [&](const PairMove& m) { return move_wins(m); });
    memo_.emplace(p, result);
    return result;
  }

  std::vector<std::string> trace() {
    std::vector<std::string> lines;
    PairPos p = root_;
    if (!wins(p)) {
      lines.push_back("r=" + std::to_string(p.r) + " | no winning move for S | D wins");
      return lines;
    }
    while (true) {
      std::optional<PairMove> chosen;
      for_each_move(p, [&](const PairMove& m) {
        if (!move_wins(m)) return false;
        chosen = m;
        return true;
      });
      std::string line = "r=" + std::to_string(p.r) + " | " + describe(*chosen);
      switch (chosen->kind) {
        case MoveKind::literal: lines.push_back(line + " | S wins"); return lines;
        case MoveKind::disjunction:
        case MoveKind::conjunction:
          lines.push_back(line + " | D->left");
          p = chosen->first;
          break;
        default:
          lines.push_back(line);
          p = chosen->first;
      }
    }
  }

 private:
  BitVec side_bits(const std::vector<PointedModel>& side) const {
    BitVec bits;
    for (const auto& pm : side) {
      const TypeCountVector c = classify(pm.model).counts;
      const auto m = static_cast<std::size_t>(std::find(models_.begin(), models_.end(), c) - models_.begin());
      for (std::size_t q = range_[m].first; q < range_[m].second; ++q)
        if (pair_mask_[q] == pm.model.type_at(pm.point).mask()) bits.set(q);
    }
    return bits;
  }

  bool move_wins(const PairMove& m) {
    switch (m.kind) {
      case MoveKind::literal: return true;  // only offered when it separates
      case MoveKind::disjunction:
      case MoveKind::conjunction: return wins(m.first) && wins(m.second);
      default: return wins(m.first);
    }
  }

  bool separates(const BitVec& a, const BitVec& b, int prop, bool positive) const {
    bool ok = true;
    a.for_each([&](std::size_t q) { ok = ok && ((((pair_mask_[q] >> prop) & 1U) == 0) == positive); });
    b.for_each([&](std::size_t q) { ok = ok && ((((pair_mask_[q] >> prop) & 1U) == 0) != positive); });
    return ok;
  }

  std::vector<std::size_t> mods(const BitVec& x) const {
    std::vector<std::size_t> out;
    x.for_each([&](std::size_t q) {
      if (out.empty() || out.back() != pair_model_[q]) out.push_back(pair_model_[q]);
    });
    return out;
  }

  // Pair sets reachable when S picks q points of model m.
  const std::vector<BitVec>& choices(std::size_t m, int q) {
    auto key = std::make_pair(m, q);
    if (auto it = choice_cache_.find(key); it != choice_cache_.end()) return it->second;
    std::vector<BitVec> out;
    const auto [lo, hi] = range_[m];
    const std::size_t width = hi - lo;
    const auto& counts = models_[m];
    if (q == 0) {
      out.emplace_back();
    } else if (q <= counts.n()) {
      std::vector<std::uint32_t> valid;
      for (std::uint32_t sub = 1; sub < (1U << width); ++sub) {
        int total = 0;
        for (std::size_t i = 0; i < width; ++i)
          if ((sub >> i) & 1U) total += counts[pair_mask_[lo + i]];
        if (std::popcount(sub) <= q && q <= total) valid.push_back(sub);
      }
      for (auto sub : valid) {
        if (options_.prune_choices &&
            std::any_of(valid.begin(), valid.end(),
                        [&](std::uint32_t o) { return o != sub && (o & sub) == o; }))
          continue;
        BitVec b;
        for (std::size_t i = 0; i < width; ++i)
          if ((sub >> i) & 1U) b.set(lo + i);
        out.push_back(b);
      }
    }
    return choice_cache_.emplace(key, std::move(out)).first->second;
  }

  // Calls f on every combination of one choice per model; stops when f returns true.
  template <typename F>
  bool product(const std::vector<std::size_t>& ms, const std::vector<int>& qs, std::size_t at,
               const BitVec& acc, F&& f) {
    if (at == ms.size()) return f(acc);
    for (const BitVec& c : choices(ms[at], qs[at]))
      if (product(ms, qs, at + 1, acc | c, f)) return true;
    return false;
  }

  template <typename F>
  bool splits(const BitVec& side, F&& f) const {
    std::vector<std::size_t> idx;
    side.for_each([&](std::size_t q) { idx.push_back(q); });
    if (idx.size() > 20) throw CapExceeded("split enumeration over more than 20 pairs");
    if (options_.prune_splits) {
      for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << idx.size()); ++mask) {
        BitVec x, y;
        for (std::size_t i = 0; i < idx.size(); ++i) ((mask >> i) & 1U ? x : y).set(idx[i]);
        if (f(x, y)) return true;
      }
      return false;
    }
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) total *= 3;
    for (std::uint64_t code = 0; code < total; ++code) {
      BitVec x, y;
      std::uint64_t rest = code;
      for (std::size_t i = 0; i < idx.size(); ++i, rest /= 3) {
        if (rest % 3 != 1) x.set(idx[i]);
        if (rest % 3 != 0) y.set(idx[i]);
      }
      if (f(x, y)) return true;
    }
    return false;
  }

  template <typename F>
  bool for_each_move(const PairPos& p, F&& f) {
    if (p.flag)
      for (int prop = 0; prop < k_; ++prop)
        for (bool pos : {true, false})
          if (separates(p.a, p.b, prop, pos)) {
            PairMove m{MoveKind::literal};
            m.prop = prop;
            m.positive = pos;
            if (f(m)) return true;
          }
    for (int r1 = 1; r1 <= p.r - 2; ++r1) {
      const int r2 = p.r - 1 - r1;
      if (splits(p.a, [&](const BitVec& x, const BitVec& y) {
            PairMove m{MoveKind::disjunction, r1, r2};
            m.first = {r1, x, p.b, p.flag};
            m.second = {r2, y, p.b, p.flag};
            return f(m);
          }))
        return true;
      if (splits(p.b, [&](const BitVec& x, const BitVec& y) {
            PairMove m{MoveKind::conjunction, r1, r2};
            m.first = {r1, p.a, x, p.flag};
            m.second = {r2, p.a, y, p.flag};
            return f(m);
          }))
        return true;
    }
    const auto mods_a = mods(p.a);
    const auto mods_b = mods(p.b);
    for (int d = 1; d <= std::min(max_grade_, p.r - 1); ++d) {
      for (MoveKind kind : {MoveKind::diamond, MoveKind::box}) {
        const bool dia = kind == MoveKind::diamond;
        std::vector<int> qa, qb;
        for (auto m : mods_a) qa.push_back(dia ? d : models_[m].n() - d + 1);
        for (auto m : mods_b) qb.push_back(dia ? models_[m].n() - d + 1 : d);
        const bool flag = options_.strict_literal_rule ? (p.flag || dia) : true;
        if (product(mods_a, qa, 0, BitVec{}, [&](const BitVec& a2) {
              return product(mods_b, qb, 0, BitVec{}, [&](const BitVec& b2) {
                PairMove m{kind};
                m.d = d;
                m.first = {p.r - d, a2, b2, flag};
                return f(m);
              });
            }))
          return true;
      }
    }
    return false;
  }

  int k_;
  int max_grade_;
  GameOptions options_;
  std::vector<TypeCountVector> models_;
  std::vector<std::uint32_t> pair_mask_;
  std::vector<std::size_t> pair_model_;
  std::vector<std::pair<std::size_t, std::size_t>> range_;
  std::map<std::pair<std::size_t, int>, std::vector<BitVec>> choice_cache_;
  std::unordered_map<PairPos, bool, PairPosHash> memo_;
  PairPos root_{};
};

GameResult run_pair_game(const GamePosition& start, int k, int max_grade, GameOptions options) {
  PairGame game(start, k, max_grade, options);
  GameResult result;
  result.winner = game.wins(game.root()) ? Player::samson : Player::delilah;
  if (options.record_trace) result.trace = game.trace();
  result.positions = game.positions();
  return result;
}

}  // namespace

GameResult solve_fs(const GamePosition& start, int k, GameOptions options) {
  return run_pair_game(start, k, 1, options);
}

GameResult solve_fsc(const GamePosition& start, int k, int n, GameOptions options) {
  for (const auto* side : {&start.a, &start.b})
    for (const auto& pm : *side)
      if (pm.model.n() != n) throw DomainError("every model of a graded game needs n worlds");
  return run_pair_game(start, k, n + 1, options);
}

// ------------------------------------------------------------- instances

GamePosition HardInstance::start(int r) const {
  GamePosition p;
  p.r = r;
  p.a.push_back({base, 0});
  for (const auto& v : variants) p.b.push_back({v, 0});
  return p;
}

HardInstance build_missing_type_instance(int k) {
  if (k < 1 || k > 2) throw CapExceeded("hard instance limited to k <= 2");
  const int n = 1 << k;
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) masks[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
  HardInstance inst{k, KripkeModel::from_masks(k, masks), {}};
  for (int i = 0; i < n; ++i) {
    auto v = masks;
    v[static_cast<std::size_t>(i)] = i == 0 ? 1U : 0U;
    inst.variants.push_back(KripkeModel::from_masks(k, v));
  }
  return inst;
}

GamePosition CountInstance::start(int r) const {
  GamePosition p;
  p.r = r;
  p.a.push_back({base, 0});
  for (const auto& v : variants) p.b.push_back({v, 0});
  return p;
}

CountInstance build_count_instance(const TypeCountVector& counts) {
  const int top = counts.largest();
  if (counts[static_cast<std::size_t>(top)] < 2)
    throw DomainError("class " + counts.label() + " realizes no type twice; worlds 1 and 2 cannot agree");
  std::vector<std::uint32_t> masks(static_cast<std::size_t>(counts[static_cast<std::size_t>(top)]),
                                   static_cast<std::uint32_t>(top));
  for (int t : counts.realized())
    if (t != top)
      for (int c = 0; c < counts[static_cast<std::size_t>(t)]; ++c) masks.push_back(static_cast<std::uint32_t>(t));
  CountInstance inst{counts, KripkeModel::from_masks(counts.k(), masks), {}, {}};
  for (int i : counts.realized())
    for (int j : counts.realized()) {
      if (i == j) continue;
      auto v = masks;
      for (std::size_t w = v.size(); w-- > 0;)
        if (v[w] == static_cast<std::uint32_t>(i)) {
          v[w] = static_cast<std::uint32_t>(j);
          break;
        }
      inst.moves.emplace_back(i, j);
      inst.variants.push_back(KripkeModel::from_masks(counts.k(), v));
    }
  return inst;
}

// -------------------------------------------------------------- hardness

HardnessReport hardness(const HardPosition& p, int k) {
  const int n = 1 << k;
  if (k < 1 || k > 2) throw DomainError("hardness is defined on the hard instance, k <= 2");
  if (p.a >> n) throw DomainError("position names worlds outside the base model");
  if (n * n < 64 && (p.b >> (n * n))) throw DomainError("position names worlds outside the variants");
  const auto variant_type = [&](int i, int w) -> std::uint32_t {
    if (w != i) return static_cast<std::uint32_t>(w);
    return i == 0 ? 1U : 0U;
  };
  const auto in_b = [&](int i, int w) { return ((p.b >> (i * n + w)) & 1U) != 0; };
  const auto variant_in_b = [&](int i) { return ((p.b >> (i * n)) & ((std::uint64_t{1} << n) - 1)) != 0; };
  HardnessReport rep;
  for (int i = 0; i < n; ++i) {
    int kind = 4, h = 0;
    bool equivalent = false;
    for (int j = 0; j < n && !equivalent; ++j)
      if ((p.a >> j) & 1U)
        for (int l = 0; l < n; ++l)
          if (in_b(i, l) && variant_type(i, l) == static_cast<std::uint32_t>(j)) equivalent = true;
    if (!p.modal_move_made && p.a != 0 && variant_in_b(i)) {
      kind = 1;
      h = 2 * k;
    } else if (equivalent) {
      kind = 2;
      h = 2 * k;
    } else if (((p.a >> i) & 1U) && variant_in_b(i)) {
      int near = 0;
      for (int j = 0; j < n; ++j)
        if (j != i && in_b(i, j) && std::popcount(static_cast<unsigned>(i ^ j)) == 1) ++near;
      // With no one-bit neighbour left the type blocks nothing; taking 2*0-1 = -1
      // would let an AND split drop the total below r.
      if (near > 0) {
        kind = 3;
        h = 2 * near - 1;
      }
    }
    rep.kind.push_back(kind);
    rep.h.push_back(h);
    if (h > 0) ++rep.poshard;
    rep.total += h;
  }
  rep.total += rep.poshard - 1;
  return rep;
}

// ----------------------------------------------------------------- cover

Cover min_cover_cost(const CoverGraph& g, const std::vector<int>& weights) {
  const std::size_t v = g.vertices.size();
  if (v > 10) throw CapExceeded("cover search limited to 10 vertices");
  if (weights.size() != v) throw DomainError("one weight per vertex required");
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [i, j] : g.edges) {
    if (i == j) throw DomainError("cover graphs are irreflexive");
    const auto fi = std::find(g.vertices.begin(), g.vertices.end(), i);
    const auto fj = std::find(g.vertices.begin(), g.vertices.end(), j);
    if (fi == g.vertices.end() || fj == g.vertices.end()) throw DomainError("edge endpoint is not a vertex");
    edges.emplace_back(static_cast<std::size_t>(fi - g.vertices.begin()),
                       static_cast<std::size_t>(fj - g.vertices.begin()));
  }
  Cover best{-1, 0, {}};
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (2 * v)); ++mask) {
    bool covers = true;
    for (const auto& [i, j] : edges)
      if (!((mask >> (2 * i)) & 1U) && !((mask >> (2 * j + 1)) & 1U)) {
        covers = false;
        break;
      }
    if (!covers) continue;
    int cost = 0;
    for (std::size_t t = 0; t < v; ++t)
      cost += weights[t] * static_cast<int>(((mask >> (2 * t)) & 1U) + ((mask >> (2 * t + 1)) & 1U));
    if (best.cost < 0 || cost < best.cost) best = {cost, mask, {}};
  }
  std::string label = "{";
  for (std::size_t t = 0; t < v; ++t)
    for (int sign = 0; sign < 2; ++sign)
      if ((best.mask >> (2 * t + static_cast<std::size_t>(sign))) & 1U) {
        if (label.size() > 1) label += ',';
        label += std::to_string(g.vertices[t]) + (sign ? "-" : "+");
      }
  best.label = label + "}";
  return best;
}

CoverGraph complete_cover_graph(const TypeCountVector& counts) {
  CoverGraph g{counts.realized(), {}};
  for (int i : g.vertices)
    for (int j : g.vertices)
      if (i != j) g.edges.emplace_back(i, j);
  return g;
}

// ---------------------------------------------------------- verification

namespace {

std::string hex(std::uint64_t v) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  do {
    out.insert(out.begin(), digits[v & 15U]);
    v >>= 4;
  } while (v);
  return "0x" + out;
}

struct WorldPos {
  int r;
  std::uint32_t a;
  std::uint64_t b;
  bool flag;
  friend bool operator==(const WorldPos&, const WorldPos&) = default;
};

struct WorldPosHash {
  std::size_t operator()(const WorldPos& p) const {
    return std::hash<std::uint64_t>{}(p.b * 0x9e3779b97f4a7c15ULL ^ (std::uint64_t{p.a} << 8) ^
                                      static_cast<std::uint64_t>(p.r * 2 + p.flag));
  }
};

// Invariant-checked exploration of every S move from positions where D
// answers splits by taking the first child that keeps the invariant.
class WorldVerifier {
 public:
  using Invariant = std::function<std::optional<std::string>(const WorldPos&)>;

  WorldVerifier(std::vector<std::uint32_t> a_types, std::vector<std::vector<std::uint32_t>> b_types, int k,
                int max_grade, GameOptions options, Invariant invariant)
      : a_types_(std::move(a_types)), b_types_(std::move(b_types)), k_(k), n_(static_cast<int>(a_types_.size())),
        max_grade_(max_grade), options_(options), invariant_(std::move(invariant)) {
    if (static_cast<std::size_t>(n_) * b_types_.size() > 64) throw CapExceeded("verifier limited to 64 B-worlds");
  }

  void run(const WorldPos& root, Certificate& cert) {
    cert_ = &cert;
    path_.clear();
    if (auto bad = invariant_(root)) {
      fail("invariant fails at the root: " + *bad);
      return;
    }
    visit(root);
    cert.positions = seen_.size();
    if (cert.violation.empty()) cert.valid = true;
  }

 private:
  std::uint64_t model_mask(std::size_t m) const {
    return ((std::uint64_t{1} << n_) - 1) << (m * static_cast<std::size_t>(n_));
  }

  void fail(const std::string& why) {
    if (!cert_->violation.empty()) return;
    cert_->violation = why;
    cert_->path = path_;
  }

  bool separates(const WorldPos& p, int prop, bool pos) const {
    for (int w = 0; w < n_; ++w)
      if (((p.a >> w) & 1U) && ((((a_types_[static_cast<std::size_t>(w)] >> prop) & 1U) == 0) != pos)) return false;
    for (std::size_t m = 0; m < b_types_.size(); ++m)
      for (int w = 0; w < n_; ++w)
        if (((p.b >> (m * static_cast<std::size_t>(n_) + static_cast<std::size_t>(w))) & 1U) &&
            ((((b_types_[m][static_cast<std::size_t>(w)] >> prop) & 1U) == 0) == pos))
          return false;
    return true;
  }

  // World sets reachable when `copies` pointed copies each pick q distinct worlds.
  std::vector<std::uint32_t> picks(int copies, int q) const {
    std::vector<std::uint32_t> out;
    if (copies == 0) return {0};
    if (q == 0) return {0};
    if (q > n_) return {};
    for (std::uint32_t u = 1; u < (1U << n_); ++u) {
      const int size = std::popcount(u);
      if (size >= q && size <= std::min(n_, copies * q)) out.push_back(u);
    }
    return out;
  }

  void child(const WorldPos& c, const std::string& move) {
    if (!cert_->violation.empty()) return;
    path_.push_back(move);
    if (auto bad = invariant_(c)) fail("invariant fails after " + move + ": " + *bad);
    else visit(c);
    path_.pop_back();
  }

  // D picks the first child keeping the invariant.
  void split(const WorldPos& c1, const WorldPos& c2, const std::string& move) {
    ++cert_->delilah_choices;
    path_.push_back(move);
    if (!invariant_(c1)) {
      path_.back() += " | D->left";
      visit(c1);
    } else if (!invariant_(c2)) {
      path_.back() += " | D->right";
      visit(c2);
    } else {
      fail("no child keeps the invariant after " + move);
    }
    path_.pop_back();
  }

  void visit(const WorldPos& p) {
    if (!cert_->violation.empty() || !seen_.insert(p).second) return;
    if (seen_.size() > options_.max_positions) throw CapExceeded("verifier position cap reached");
    const std::string at = "r=" + std::to_string(p.r) + " | ";
    if (p.flag)
      for (int prop = 0; prop < k_; ++prop)
        for (bool pos : {true, false}) {
          ++cert_->samson_moves;
          ++cert_->terminal_moves;
          if (separates(p, prop, pos)) {
            path_.push_back(at + "move=LIT " + literal_text(prop, pos));
            fail("literal separates the sides");
            path_.pop_back();
            return;
          }
        }
    for (int r1 = 1; r1 <= p.r - 2; ++r1) {
      const int r2 = p.r - 1 - r1;
      const std::string tag = " r1=" + std::to_string(r1) + " r2=" + std::to_string(r2);
      for_each_cover(p.a, n_, [&](std::uint64_t x, std::uint64_t y) {
        ++cert_->samson_moves;
        split({r1, static_cast<std::uint32_t>(x), p.b, p.flag}, {r2, static_cast<std::uint32_t>(y), p.b, p.flag},
              at + "move=OR" + tag + " A1=" + hex(x) + " A2=" + hex(y));
      });
      for_each_cover(p.b, static_cast<int>(b_types_.size()) * n_, [&](std::uint64_t x, std::uint64_t y) {
        ++cert_->samson_moves;
        split({r1, p.a, x, p.flag}, {r2, p.a, y, p.flag}, at + "move=AND" + tag + " B1=" + hex(x) + " B2=" + hex(y));
      });
      if (!cert_->violation.empty()) return;
    }
    const int a_copies = std::popcount(p.a);
    for (int d = 1; d <= std::min(max_grade_, p.r - 1); ++d)
      for (bool dia : {true, false}) {
        const int qa = dia ? d : n_ - d + 1;
        const int qb = dia ? n_ - d + 1 : d;
        const auto a_options = picks(a_copies, qa);
        std::vector<std::vector<std::uint32_t>> b_options;
        bool available = !a_options.empty();
        for (std::size_t m = 0; m < b_types_.size(); ++m) {
          const int copies = std::popcount(p.b & model_mask(m));
          b_options.push_back(picks(copies, qb));
          if (b_options.back().empty()) available = false;
        }
        if (!available) continue;
        const bool flag = options_.strict_literal_rule ? (p.flag || dia) : true;
        const std::string move = at + (dia ? "move=DIAMOND d=" : "move=BOX d=") + std::to_string(d);
        for (auto a2 : a_options) {
          std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t m, std::uint64_t acc) {
            if (!cert_->violation.empty()) return;
            if (m == b_types_.size()) {
              ++cert_->samson_moves;
              child({p.r - d, a2, acc, flag}, move);
              return;
            }
            for (auto u : b_options[m]) rec(m + 1, acc | (std::uint64_t{u} << (m * static_cast<std::size_t>(n_))));
          };
          rec(0, 0);
        }
      }
  }

  // Every (x, y) with x | y = side.
  template <typename F>
  void for_each_cover(std::uint64_t side, int width, F&& f) {
    std::vector<int> idx;
    for (int i = 0; i < width; ++i)
      if ((side >> i) & 1U) idx.push_back(i);
    if (idx.size() > 16) throw CapExceeded("verifier split enumeration over more than 16 worlds");
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < idx.size(); ++i) total *= 3;
    for (std::uint64_t code = 0; code < total && cert_->violation.empty(); ++code) {
      std::uint64_t x = 0, y = 0, rest = code;
      for (std::size_t i = 0; i < idx.size(); ++i, rest /= 3) {
        if (rest % 3 != 1) x |= std::uint64_t{1} << idx[i];
        if (rest % 3 != 0) y |= std::uint64_t{1} << idx[i];
      }
      f(x, y);
    }
  }

  std::vector<std::uint32_t> a_types_;
  std::vector<std::vector<std::uint32_t>> b_types_;
  int k_;
  int n_;
  int max_grade_;
  GameOptions options_;
  Invariant invariant_;
  Certificate* cert_ = nullptr;
  std::vector<std::string> path_;
  std::unordered_set<WorldPos, WorldPosHash> seen_;
};

std::vector<std::uint32_t> masks_of(const KripkeModel& m) {
  std::vector<std::uint32_t> out;
  for (const auto& t : m.types()) out.push_back(t.mask());
  return out;
}

}  // namespace

Certificate verify_d_strategy(const StrategyInstance& instance, int r, GameOptions options) {
  Certificate cert;
  cert.strategy = instance.strategy;
  cert.r = r;
  if (r < 1) throw DomainError("verify_d_strategy needs r >= 1");
  if (instance.strategy == DStrategy::hardness) {
    const int k = instance.k;
    if (k != 1) throw CapExceeded("exhaustive hardness verification limited to k = 1");
    const HardInstance inst = build_missing_type_instance(k);
    std::vector<std::vector<std::uint32_t>> b;
    for (const auto& v : inst.variants) b.push_back(masks_of(v));
    const int n = 1 << k;
    WorldVerifier verifier(masks_of(inst.base), b, k, 1, options, [k](const WorldPos& p) -> std::optional<std::string> {
      const HardnessReport rep = hardness({p.r, p.a, p.b, p.flag}, k);
      const auto kind3 = std::count(rep.kind.begin(), rep.kind.end(), 3);
      if (!(p.r < rep.total))
        return "(a) r < h fails: r=" + std::to_string(p.r) + " h=" + std::to_string(rep.total);
      if (kind3 > 1) return "(b) more than one type of kind 3";
      return std::nullopt;
    });
    std::uint64_t b0 = 0;
    for (int i = 0; i < n; ++i) b0 |= std::uint64_t{1} << (i * n);
    verifier.run({r, 1U, b0, false}, cert);
    return cert;
  }
  if (!instance.counts) throw DomainError("cover strategy needs a class");
  const TypeCountVector& counts = *instance.counts;
  if (counts.k() != 1) throw CapExceeded("exhaustive cover verification limited to k = 1");
  const CountInstance inst = build_count_instance(counts);
  const int n = counts.n();
  std::vector<std::vector<std::uint32_t>> b;
  for (const auto& v : inst.variants) b.push_back(masks_of(v));
  const auto base = masks_of(inst.base);
  const CoverGraph complete = complete_cover_graph(counts);
  std::vector<int> weights;
  for (int t : complete.vertices) weights.push_back(counts[static_cast<std::size_t>(t)]);
  WorldVerifier verifier(
      base, b, counts.k(), n + 1, options, [&](const WorldPos& p) -> std::optional<std::string> {
        CoverGraph g{complete.vertices, {}};
        for (std::size_t e = 0; e < inst.moves.size(); ++e) {
          bool edge = false;
          for (int w = 0; w < n && !edge; ++w)
            if ((p.a >> w) & 1U)
              for (int v = 0; v < n; ++v)
                if (((p.b >> (e * static_cast<std::size_t>(n) + static_cast<std::size_t>(v))) & 1U) &&
                    b[e][static_cast<std::size_t>(v)] == base[static_cast<std::size_t>(w)]) {
                  edge = true;
                  break;
                }
          if (edge) g.edges.push_back(inst.moves[e]);
        }
        const Cover c = min_cover_cost(g, weights);
        if (!(p.r < c.cost))
          return "r < R fails: r=" + std::to_string(p.r) + " R=" + std::to_string(c.cost);
        return std::nullopt;
      });
  std::uint64_t b0 = 0;
  for (std::size_t e = 0; e < inst.variants.size(); ++e) b0 |= std::uint64_t{1} << (e * static_cast<std::size_t>(n));
  verifier.run({r, 1U, b0, false}, cert);
  return cert;
}

}  // namespace dcx
