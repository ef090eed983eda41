#include "dcx/complexity.hpp"

#include <algorithm>

#include "dcx/errors.hpp"

namespace dcx {

namespace {

Formula build(NodeKind kind, int param, const Formula& a, const Formula* b) {
  switch (kind) {
    case NodeKind::conjunction: return Formula::conjunction(a, *b);
    case NodeKind::disjunction: return Formula::disjunction(a, *b);
    case NodeKind::diamond: return Formula::diamond(param, a);
    case NodeKind::box: return Formula::box(param, a);
    case NodeKind::exists: return Formula::exists(param, a);
    case NodeKind::forall: return Formula::forall(param, a);
    default: throw DomainError("build: not an inner node");
  }
}

std::string text_of(NodeKind kind, int param, const Witness& a, const Witness* b) {
  if (kind == NodeKind::conjunction || kind == NodeKind::disjunction)
    return render_binary(kind, a.formula.kind(), a.text, b->formula.kind(), b->text);
  return render_prefix(kind, param, a.formula.kind(), a.text);
}

}  // namespace

// ------------------------------------------------------------------ modal

ModalDp::ModalDp(std::vector<TypeCountVector> models, int max_grade, DpOptions options)
    : models_(std::move(models)), max_grade_(max_grade), options_(options) {
  if (models_.empty()) throw DomainError("ModalDp needs at least one model");
  if (max_grade_ < 1) throw DomainError("ModalDp needs max_grade >= 1");
  const int k = models_.front().k();
  for (std::size_t m = 0; m < models_.size(); ++m) {
    if (models_[m].k() != k) throw DomainError("ModalDp models over different vocabularies");
    const std::size_t lo = pair_model_.size();
    for (int t : models_[m].realized()) {
      pair_model_.push_back(m);
      pair_weight_.push_back(models_[m][static_cast<std::size_t>(t)]);
      pair_mask_.push_back(static_cast<std::uint32_t>(t));
    }
    model_range_.emplace_back(lo, pair_model_.size());
    if (lo == pair_model_.size()) throw DomainError("ModalDp model without worlds");
  }
  if (pair_model_.size() > BitVec::kCapacity)
    throw CapExceeded("ModalDp: " + std::to_string(pair_model_.size()) + " pairs exceed 256");
}

ModalDp ModalDp::for_universe(const ClassUniverse& universe, DpOptions options) {
  if (universe.dialect() == Dialect::fo) throw DomainError("ModalDp needs a modal universe");
  const int grade = universe.dialect() == Dialect::mlu ? 1 : universe.n() + 1;
  return ModalDp(universe.count_classes(), grade, options);
}

int ModalDp::pair_index(std::size_t m, std::uint32_t mask) const {
  for (std::size_t p = model_range_[m].first; p < model_range_[m].second; ++p)
    if (pair_mask_[p] == mask) return static_cast<int>(p);
  return -1;
}

BitVec ModalDp::model_bits(std::size_t m) const {
  BitVec b;
  for (std::size_t p = model_range_[m].first; p < model_range_[m].second; ++p) b.set(p);
  return b;
}

BitVec ModalDp::lift(const Denotation& classes) const {
  if (classes.size() != models_.size()) throw DomainError("denotation width differs from the model count");
  BitVec b;
  for (std::size_t m = 0; m < models_.size(); ++m)
    if (classes[m]) b |= model_bits(m);
  return b;
}

BitVec ModalDp::modal(bool diamond, int grade, const BitVec& x) const {
  BitVec out;
  for (std::size_t m = 0; m < models_.size(); ++m) {
    const auto [lo, hi] = model_range_[m];
    int hits = 0;
    for (std::size_t p = lo; p < hi; ++p)
      if (x.test(p) == diamond) hits += pair_weight_[p];
    if (diamond ? hits >= grade : hits < grade)
      for (std::size_t p = lo; p < hi; ++p) out.set(p);
  }
  return out;
}

BitVec ModalDp::denote(const Formula& f) const {
  switch (f.kind()) {
    case NodeKind::literal: {
      BitVec b;
      for (std::size_t p = 0; p < pair_count(); ++p)
        if ((((pair_mask_[p] >> f.symbol()) & 1U) == 0) == f.positive()) b.set(p);
      return b;
    }
    case NodeKind::conjunction: return denote(f.left()) & denote(f.right());
    case NodeKind::disjunction: return denote(f.left()) | denote(f.right());
    case NodeKind::diamond: return modal(true, f.grade(), denote(f.child()));
    case NodeKind::box: return modal(false, f.grade(), denote(f.child()));
    default: throw WellFormednessError("first-order node in a modal formula");
  }
}

void ModalDp::check_size(const Table& t) const {
  if (t.best.size() > options_.max_entries)
    throw CapExceeded("ModalDp table exceeds " + std::to_string(options_.max_entries) + " denotations");
}

void ModalDp::offer(Table& t, const BitVec& key, int s, NodeKind kind, int grade, const Witness* a,
                    const Witness* b) {
  auto it = t.best.find(key);
  if (it != t.best.end() && t.slots[it->second].size < s) return;
  std::string text = text_of(kind, grade, *a, b);
  if (it != t.best.end()) {
    Witness& w = t.slots[it->second];
    if (text < w.text) {
      w.formula = build(kind, grade, a->formula, b ? &b->formula : nullptr);
      w.text = std::move(text);
    }
    return;
  }
  t.slots.push_back({s, build(kind, grade, a->formula, b ? &b->formula : nullptr), std::move(text)});
  t.best.emplace(key, static_cast<std::uint32_t>(t.slots.size() - 1));
  t.at[static_cast<std::size_t>(s)].push_back(key);
}

void ModalDp::extend_to(int budget) {
  const int k = models_.front().k();
  const BitVec all = all_bits();
  const auto constant = [&](const BitVec& x) { return x.none() || x == all; };
  for (int s = done_ + 1; s <= budget; ++s) {
    free_.at.resize(static_cast<std::size_t>(s) + 1);
    guarded_.at.resize(static_cast<std::size_t>(s) + 1);
    if (s == 1) {
      for (int prop = 0; prop < k; ++prop)
        for (bool pos : {true, false}) {
          Formula lit = Formula::literal(prop, pos);
          BitVec bits = denote(lit);
          auto it = free_.best.find(bits);
          std::string text = render(lit);
          if (it != free_.best.end()) {
            if (text < free_.slots[it->second].text) free_.slots[it->second] = {1, lit, text};
            continue;
          }
          free_.slots.push_back({1, lit, text});
          free_.best.emplace(bits, static_cast<std::uint32_t>(free_.slots.size() - 1));
          free_.at[1].push_back(bits);
        }
    }
    for (int d = 1; d <= std::min(max_grade_, s - 1); ++d) {
      for (const BitVec& x : free_.at[static_cast<std::size_t>(s - d)]) {
        const Witness* child = &free_.get(x);
        for (NodeKind kind : {NodeKind::diamond, NodeKind::box}) {
          const BitVec bits = modal(kind == NodeKind::diamond, d, x);
          offer(guarded_, bits, s, kind, d, child, nullptr);
          offer(free_, bits, s, kind, d, child, nullptr);
        }
      }
    }
    for (int a = 1; a <= s - 2; ++a) {
      const int b = s - 1 - a;
      for (Table* t : {&free_, &guarded_}) {
        const auto& left = t->at[static_cast<std::size_t>(a)];
        const auto& right = t->at[static_cast<std::size_t>(b)];
        for (const BitVec& x : left) {
          if (options_.prune_constants && constant(x)) continue;
          const Witness* wx = &t->get(x);
          for (const BitVec& y : right) {
            if (options_.prune_constants && constant(y)) continue;
            const Witness* wy = &t->get(y);
            const BitVec conj = x & y;
            const BitVec disj = x | y;
            offer(*t, conj, s, NodeKind::conjunction, 0, wx, wy);
            offer(*t, disj, s, NodeKind::disjunction, 0, wx, wy);
            if (t == &guarded_) {
              offer(free_, conj, s, NodeKind::conjunction, 0, wx, wy);
              offer(free_, disj, s, NodeKind::disjunction, 0, wx, wy);
            }
          }
        }
      }
    }
    check_size(free_);
    check_size(guarded_);
    done_ = s;
  }
}

std::optional<Witness> ModalDp::guarded(const BitVec& bits, int budget) {
  extend_to(budget);
  auto it = guarded_.best.find(bits);
  if (it == guarded_.best.end() || guarded_.slots[it->second].size > budget) return std::nullopt;
  return guarded_.slots[it->second];
}

std::optional<Witness> ModalDp::free(const BitVec& bits, int budget) {
  extend_to(budget);
  auto it = free_.best.find(bits);
  if (it == free_.best.end() || free_.slots[it->second].size > budget) return std::nullopt;
  return free_.slots[it->second];
}

std::optional<Witness> ModalDp::separating(const BitVec& accept, const BitVec& reject, int budget) {
  extend_to(budget);
  for (int s = 1; s <= budget; ++s) {
    const Witness* best = nullptr;
    for (const BitVec& x : guarded_.at[static_cast<std::size_t>(s)]) {
      if (!accept.subset_of(x) || x.intersects(reject)) continue;
      const Witness& w = guarded_.get(x);
      if (!best || w.text < best->text) best = &w;
    }
    if (best) return *best;
  }
  return std::nullopt;
}

namespace {

std::optional<Witness> modal_min_size(const ClassUniverse& u, const Denotation& target, int budget,
                                      DpOptions options) {
  if (target.size() != u.size()) throw DomainError("target width differs from the universe size");
  ModalDp dp = ModalDp::for_universe(u, options);
  return dp.guarded(dp.lift(target), budget);
}

}  // namespace

std::optional<Witness> min_size_mlu(int k, int n, const Denotation& target, int budget, DpOptions options) {
  if (k > 2 || n > 6 || budget > 24) throw CapExceeded("min_size_mlu limited to k <= 2, n <= 6, budget <= 24");
  return modal_min_size(ClassUniverse::mlu(k, n), target, budget, options);
}

std::optional<Witness> min_size_gmlu(int k, int n, const Denotation& target, int budget, DpOptions options) {
  if (k == 1 ? (n > 6 || budget > 14) : (k != 2 || n > 3 || budget > 12))
    throw CapExceeded("min_size_gmlu limited to k = 1, n <= 6, budget <= 14 or k = 2, n <= 3, budget <= 12");
  return modal_min_size(ClassUniverse::gmlu(k, n), target, budget, options);
}

// --------------------------------------------------------------------- FO

FoDp::FoDp(const ClassUniverse& universe, int var_cap, DpOptions options)
    : universe_(&universe), var_cap_(var_cap), n_(universe.n()), options_(options) {
  if (universe.dialect() != Dialect::fo) throw DomainError("FoDp needs an FO universe");
  if (var_cap < 1 || var_cap > 3) throw CapExceeded("FoDp supports 1..3 variables");
  assignments_ = 1;
  for (int v = 0; v < var_cap; ++v) assignments_ *= static_cast<std::size_t>(n_);
  pair_count_ = universe.size() * assignments_;
  if (pair_count_ > BitVec::kCapacity)
    throw CapExceeded("FoDp: " + std::to_string(pair_count_) + " pairs exceed 256");
}

void FoDp::offer(const Key& key, int s, NodeKind kind, int param, const Witness* a, const Witness* b,
                 std::optional<Formula> leaf) {
  auto it = best_.find(key);
  if (it != best_.end() && slots_[it->second].size < s) return;
  std::string text = leaf ? render(*leaf) : text_of(kind, param, *a, b);
  auto make = [&] { return leaf ? *leaf : build(kind, param, a->formula, b ? &b->formula : nullptr); };
  if (it != best_.end()) {
    Witness& w = slots_[it->second];
    if (text < w.text) {
      w.formula = make();
      w.text = std::move(text);
    }
    return;
  }
  slots_.push_back({s, make(), std::move(text)});
  best_.emplace(key, static_cast<std::uint32_t>(slots_.size() - 1));
  at_[static_cast<std::size_t>(s)].push_back(key);
  if (best_.size() > options_.max_entries)
    throw CapExceeded("FoDp table exceeds " + std::to_string(options_.max_entries) + " states");
}

void FoDp::extend_to(int budget) {
  const auto value_of = [&](std::size_t a, int var) {
    for (int v = var_cap_ - 1; v > var; --v) a /= static_cast<std::size_t>(n_);
    return static_cast<int>(a % static_cast<std::size_t>(n_));
  };
  const auto with_value = [&](std::size_t a, int var, int value) {
    std::size_t place = 1;
    for (int v = var_cap_ - 1; v > var; --v) place *= static_cast<std::size_t>(n_);
    const auto old = static_cast<std::size_t>(value_of(a, var));
    return a - old * place + static_cast<std::size_t>(value) * place;
  };
  const auto leaf_bits = [&](const Formula& f) {
    BitVec b;
    std::vector<int> env(static_cast<std::size_t>(var_cap_));
    for (std::size_t i = 0; i < universe_->size(); ++i)
      for (std::size_t a = 0; a < assignments_; ++a) {
        for (int v = 0; v < var_cap_; ++v) env[static_cast<std::size_t>(v)] = value_of(a, v);
        if (eval_fo_open(universe_->structures()[i], f, env)) b.set(i * assignments_ + a);
      }
    return b;
  };
  for (int s = done_ + 1; s <= budget; ++s) {
    at_.resize(static_cast<std::size_t>(s) + 1);
    if (s == 1) {
      std::vector<Formula> leaves;
      for (int i = 0; i < var_cap_; ++i)
        for (int j = 0; j < var_cap_; ++j)
          for (bool pos : {true, false}) leaves.push_back(Formula::equality(i, j, pos));
      const auto& arities = universe_->arities();
      for (std::size_t r = 0; r < arities.size(); ++r) {
        std::size_t tuples = 1;
        for (int i = 0; i < arities[r]; ++i) tuples *= static_cast<std::size_t>(var_cap_);
        for (std::size_t code = 0; code < tuples; ++code) {
          std::vector<int> args(static_cast<std::size_t>(arities[r]));
          std::size_t rest = code;
          for (std::size_t i = args.size(); i-- > 0;) {
            args[i] = static_cast<int>(rest % static_cast<std::size_t>(var_cap_));
            rest /= static_cast<std::size_t>(var_cap_);
          }
          for (bool pos : {true, false}) leaves.push_back(Formula::atom(static_cast<int>(r), args, pos));
        }
      }
      for (const auto& leaf : leaves)
        offer({leaf_bits(leaf), free_variables(leaf)}, 1, leaf.kind(), 0, nullptr, nullptr, leaf);
    }
    if (s >= 2) {
      for (const Key& key : at_[static_cast<std::size_t>(s - 1)]) {
        const Witness* child = &slots_[best_.at(key)];
        for (int var = 0; var < var_cap_; ++var)
          for (NodeKind kind : {NodeKind::exists, NodeKind::forall}) {
            const bool ex = kind == NodeKind::exists;
            BitVec bits;
            for (std::size_t i = 0; i < universe_->size(); ++i)
              for (std::size_t a = 0; a < assignments_; ++a) {
                bool v = !ex;
                for (int val = 0; val < n_; ++val)
                  if (key.bits.test(i * assignments_ + with_value(a, var, val)) == ex) {
                    v = ex;
                    break;
                  }
                if (v) bits.set(i * assignments_ + a);
              }
            offer({bits, key.free_vars & ~(1U << var)}, s, kind, var, child, nullptr);
          }
      }
    }
    for (int a = 1; a <= s - 2; ++a) {
      const int b = s - 1 - a;
      const auto& left = at_[static_cast<std::size_t>(a)];
      const auto& right = at_[static_cast<std::size_t>(b)];
      for (const Key& x : left) {
        const Witness* wx = &slots_[best_.at(x)];
        for (const Key& y : right) {
          const Witness* wy = &slots_[best_.at(y)];
          const std::uint32_t fv = x.free_vars | y.free_vars;
          offer({x.bits & y.bits, fv}, s, NodeKind::conjunction, 0, wx, wy);
          offer({x.bits | y.bits, fv}, s, NodeKind::disjunction, 0, wx, wy);
        }
      }
    }
    done_ = s;
  }
}

std::optional<Witness> FoDp::sentence(const Denotation& target, int budget) {
  if (target.size() != universe_->size()) throw DomainError("target width differs from the universe size");
  extend_to(budget);
  BitVec bits;
  for (std::size_t i = 0; i < universe_->size(); ++i)
    if (target[i])
      for (std::size_t a = 0; a < assignments_; ++a) bits.set(i * assignments_ + a);
  auto it = best_.find({bits, 0});
  if (it == best_.end() || slots_[it->second].size > budget) return std::nullopt;
  return slots_[it->second];
}

std::optional<Witness> min_size_fo(const std::vector<int>& arities, int n, const Denotation& target,
                                   int budget, int var_cap, DpOptions options) {
  if (n > 2 || var_cap > 2 || budget > 10) throw CapExceeded("min_size_fo limited to n <= 2, var_cap <= 2, budget <= 10");
  const ClassUniverse u = ClassUniverse::fo(arities, n);
  FoDp dp(u, var_cap, options);
  return dp.sentence(target, budget);
}

// ----------------------------------------------------------- constructions

namespace {

Formula negated_type(std::uint32_t mask, int k) { return dual_negate(type_formula(OneType(mask, k))); }

}  // namespace

Formula construct_phi_pi(int k, const TypeSet& types) {
  if (types.empty()) throw DomainError("construct_phi_pi needs a nonempty type set");
  std::vector<Formula> parts;
  std::vector<Formula> excluded;
  for (std::uint32_t m = 0; m < (1U << k); ++m) {
    if (types.contains(m)) parts.push_back(Formula::diamond(1, type_formula(OneType(m, k))));
    else excluded.push_back(negated_type(m, k));
  }
  if (!excluded.empty()) parts.push_back(Formula::box(1, conjunction_of(excluded)));
  return conjunction_of(parts);
}

int phi_pi_size(int k, const TypeSet& types) {
  const int l = 1 << k;
  return types.size() == l ? k * 2 * l + l - 1 : k * 2 * l + types.size();
}

Formula construct_phi1(const TypeCountVector& counts) {
  const int k = counts.k();
  std::vector<Formula> parts;
  for (int i : counts.realized())
    parts.push_back(Formula::diamond(counts[static_cast<std::size_t>(i)],
                                     type_formula(OneType(static_cast<std::uint32_t>(i), k))));
  return conjunction_of(parts);
}

int phi1_size(const TypeCountVector& counts) {
  const int r = static_cast<int>(counts.realized().size());
  return counts.n() + r * (2 * counts.k() - 1) + r - 1;
}

Formula construct_phi2(const TypeCountVector& counts) {
  const int k = counts.k();
  const auto realized = counts.realized();
  const int m = counts.largest();
  std::vector<Formula> alternatives;
  for (int i : realized) alternatives.push_back(type_formula(OneType(static_cast<std::uint32_t>(i), k)));
  std::vector<Formula> parts{Formula::box(1, disjunction_of(alternatives))};
  for (int i : realized)
    if (i != m)
      parts.push_back(Formula::diamond(counts[static_cast<std::size_t>(i)],
                                       type_formula(OneType(static_cast<std::uint32_t>(i), k))));
  for (int i : realized)
    if (i != m)
      parts.push_back(Formula::box(counts[static_cast<std::size_t>(i)] + 1,
                                   negated_type(static_cast<std::uint32_t>(i), k)));
  return conjunction_of(parts);
}

int phi2_size(const TypeCountVector& counts) {
  const int k = counts.k();
  const int r = static_cast<int>(counts.realized().size());
  const int rest = counts.n() - counts[static_cast<std::size_t>(counts.largest())];
  return 2 * rest + 2 * k * r + (r - 1) * (4 * k + 1);
}

int sandwich_lower_bound(const TypeCountVector& counts) {
  const int n = counts.n();
  return std::min(n, 2 * (n - counts[static_cast<std::size_t>(counts.largest())]));
}

}  // namespace dcx
