#include "dcx/semantics.hpp"

#include <algorithm>
#include <set>

#include "dcx/errors.hpp"

namespace dcx {

namespace {

void require_modal(const Formula& f) {
  switch (f.kind()) {
    case NodeKind::exists:
    case NodeKind::forall:
    case NodeKind::equality:
    case NodeKind::atom:
      throw WellFormednessError("first-order node in a modal formula");
    default: break;
  }
}

bool eval_type(const std::vector<int>& counts, std::uint32_t point, const Formula& f) {
  require_modal(f);
  switch (f.kind()) {
    case NodeKind::literal: return (((point >> f.symbol()) & 1U) == 0) == f.positive();
    case NodeKind::conjunction:
      return eval_type(counts, point, f.left()) && eval_type(counts, point, f.right());
    case NodeKind::disjunction:
      return eval_type(counts, point, f.left()) || eval_type(counts, point, f.right());
    case NodeKind::diamond:
    case NodeKind::box: {
      const bool dia = f.kind() == NodeKind::diamond;
      long long hits = 0;
      for (std::size_t t = 0; t < counts.size(); ++t)
        if (counts[t] > 0 && eval_type(counts, static_cast<std::uint32_t>(t), f.child()) == dia)
          hits += counts[t];
      // diamond: at least d satisfy; box: fewer than d falsify.
      return dia ? hits >= f.grade() : hits < f.grade();
    }
    default: break;
  }
  return false;
}

void check_vocabulary(const Formula& f, int k) {
  switch (f.kind()) {
    case NodeKind::literal:
      if (f.symbol() >= k) throw DomainError("formula mentions p" + std::to_string(f.symbol() + 1) +
                                             " but the model has k = " + std::to_string(k));
      return;
    case NodeKind::conjunction:
    case NodeKind::disjunction:
      check_vocabulary(f.left(), k);
      check_vocabulary(f.right(), k);
      return;
    case NodeKind::diamond:
    case NodeKind::box: check_vocabulary(f.child(), k); return;
    default: require_modal(f);
  }
}

std::vector<int> counts_of(const KripkeModel& model) {
  std::vector<int> counts(std::size_t{1} << model.k(), 0);
  for (const auto& t : model.types()) ++counts[t.mask()];
  return counts;
}

}  // namespace

bool eval_at(const KripkeModel& model, int world, const Formula& f) {
  if (world < 0 || world >= model.n()) throw DomainError("evaluation point outside the model");
  check_vocabulary(f, model.k());
  return eval_type(counts_of(model), model.type_at(world).mask(), f);
}

bool eval_at_type(const TypeCountVector& counts, std::uint32_t point_mask, const Formula& f) {
  check_vocabulary(f, counts.k());
  return eval_type(counts.counts(), point_mask, f);
}

bool eval_counts(const TypeCountVector& counts, const Formula& f) {
  check_vocabulary(f, counts.k());
  if (!is_guarded(f)) throw WellFormednessError("point-free evaluation needs every literal under a modality");
  return eval_type(counts.counts(), 0, f);
}

bool eval_gmlu(const KripkeModel& model, const Formula& f) {
  return eval_counts(classify(model).counts, f);
}

// ----------------------------------------------------------------------- FO

namespace {

bool eval_fo_rec(const RelationalStructure& s, const Formula& f, std::vector<int>& env) {
  switch (f.kind()) {
    case NodeKind::equality:
      return (env[static_cast<std::size_t>(f.arguments()[0])] ==
              env[static_cast<std::size_t>(f.arguments()[1])]) == f.positive();
    case NodeKind::atom: {
      const auto& args = f.arguments();
      if (static_cast<std::size_t>(f.symbol()) >= s.relation_count())
        throw DomainError("formula mentions an unknown relation");
      if (static_cast<int>(args.size()) != s.arities()[static_cast<std::size_t>(f.symbol())])
        throw DomainError("atom arity differs from the structure");
      std::vector<int> tuple(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) tuple[i] = env[static_cast<std::size_t>(args[i])];
      return s.holds(static_cast<std::size_t>(f.symbol()), tuple) == f.positive();
    }
    case NodeKind::conjunction: return eval_fo_rec(s, f.left(), env) && eval_fo_rec(s, f.right(), env);
    case NodeKind::disjunction: return eval_fo_rec(s, f.left(), env) || eval_fo_rec(s, f.right(), env);
    case NodeKind::exists:
    case NodeKind::forall: {
      const bool ex = f.kind() == NodeKind::exists;
      auto& slot = env[static_cast<std::size_t>(f.variable())];
      const int saved = slot;
      bool result = !ex;
      for (int v = 0; v < s.n(); ++v) {
        slot = v;
        if (eval_fo_rec(s, f.child(), env) == ex) {
          result = ex;
          break;
        }
      }
      slot = saved;
      return result;
    }
    default: throw WellFormednessError("modal node in a first-order formula");
  }
}

}  // namespace

bool eval_fo_open(const RelationalStructure& s, const Formula& f, std::span<const int> assignment) {
  if (s.n() > kMaxCanonicalDomain) throw CapExceeded("FO evaluation limited to n <= 6");
  std::vector<int> env(32, 0);
  std::copy(assignment.begin(), assignment.end(), env.begin());
  const std::uint32_t fv = free_variables(f);
  for (int v = 0; v < 32; ++v)
    if (((fv >> v) & 1U) && static_cast<std::size_t>(v) >= assignment.size())
      throw WellFormednessError("no value for free variable x" + std::to_string(v + 1));
  return eval_fo_rec(s, f, env);
}

bool eval_fo(const RelationalStructure& s, const Formula& sentence) {
  if (free_variables(sentence) != 0) throw WellFormednessError("FO evaluation needs a sentence");
  return eval_fo_open(s, sentence, {});
}

// ----------------------------------------------------------------- universe

ClassUniverse ClassUniverse::mlu(int k, int n) {
  if (k < 1 || k > 4) throw CapExceeded("MLU universe supports 1 <= k <= 4");
  ClassUniverse u;
  u.dialect_ = Dialect::mlu;
  u.k_ = k;
  u.n_ = n;
  u.id_ = "mlu:k=" + std::to_string(k) + ":n=" + std::to_string(n);
  const std::uint64_t limit = std::uint64_t{1} << (1U << k);
  for (std::uint64_t bits = 1; bits < limit; ++bits) {
    TypeSet set(bits, k);
    if (n > 0 && set.size() > n) continue;
    std::vector<int> counts(std::size_t{1} << k, 0);
    for (auto m : set.masks()) counts[m] = 1;
    u.type_sets_.push_back(set);
    u.counts_.emplace_back(std::move(counts));
  }
  return u;
}

ClassUniverse ClassUniverse::gmlu(int k, int n) {
  if (k < 1 || n < 1) throw DomainError("GMLU universe needs k >= 1 and n >= 1");
  ClassUniverse u;
  u.dialect_ = Dialect::gmlu;
  u.k_ = k;
  u.n_ = n;
  u.id_ = "gmlu:k=" + std::to_string(k) + ":n=" + std::to_string(n);
  u.counts_ = count_vectors(k, n);
  if (u.counts_.size() > 4096) throw CapExceeded("GMLU universe exceeds 4096 classes");
  for (const auto& c : u.counts_) u.type_sets_.push_back(c.support());
  return u;
}

ClassUniverse ClassUniverse::fo(std::vector<int> arities, int n) {
  ClassUniverse u;
  u.dialect_ = Dialect::fo;
  u.n_ = n;
  u.arities_ = arities;
  u.id_ = "fo:n=" + std::to_string(n) + ":ar=";
  for (int a : arities) u.id_ += std::to_string(a);
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<RelationalStructure> forms;
  for_each_structure(arities, n, [&](const RelationalStructure& s) {
    RelationalStructure c = canonical_form(s);
    std::vector<std::uint8_t> key;
    for (std::size_t r = 0; r < c.relation_count(); ++r)
      for (std::size_t i = 0; i < c.cell_count(r); ++i) key.push_back(c.cell(r, i) ? 1 : 0);
    if (seen.insert(key).second) forms.push_back(std::move(c));
  });
  std::sort(forms.begin(), forms.end());
  u.structures_ = std::move(forms);
  return u;
}

std::size_t ClassUniverse::size() const {
  return dialect_ == Dialect::fo ? structures_.size() : counts_.size();
}

std::string ClassUniverse::label(std::size_t i) const {
  switch (dialect_) {
    case Dialect::mlu: return type_sets_.at(i).label();
    case Dialect::gmlu: return counts_.at(i).label();
    case Dialect::fo: return format_structure(structures_.at(i));
  }
  return {};
}

std::size_t ClassUniverse::index_of(const TypeCountVector& counts) const {
  if (dialect_ == Dialect::mlu) return index_of(counts.support());
  if (dialect_ != Dialect::gmlu) throw DomainError("count vector in a non-modal universe");
  auto it = std::find(counts_.begin(), counts_.end(), counts);
  if (it == counts_.end()) throw DomainError("class " + counts.label() + " not in universe " + id_);
  return static_cast<std::size_t>(it - counts_.begin());
}

std::size_t ClassUniverse::index_of(const TypeSet& set) const {
  if (dialect_ != Dialect::mlu) throw DomainError("type set lookup needs an MLU universe");
  auto it = std::find(type_sets_.begin(), type_sets_.end(), set);
  if (it == type_sets_.end()) throw DomainError("class " + set.label() + " not in universe " + id_);
  return static_cast<std::size_t>(it - type_sets_.begin());
}

std::size_t ClassUniverse::index_of(const KripkeModel& model) const {
  return index_of(classify(model).counts);
}

std::size_t ClassUniverse::index_of(const RelationalStructure& s) const {
  if (dialect_ != Dialect::fo) throw DomainError("structure lookup needs an FO universe");
  const RelationalStructure c = canonical_form(s);
  auto it = std::lower_bound(structures_.begin(), structures_.end(), c);
  if (it == structures_.end() || !(*it == c)) throw DomainError("structure not in universe " + id_);
  return static_cast<std::size_t>(it - structures_.begin());
}

Denotation denotation(const Formula& f, const ClassUniverse& universe) {
  Denotation out(universe.size());
  for (std::size_t i = 0; i < universe.size(); ++i) {
    const bool v = universe.dialect() == Dialect::fo ? eval_fo(universe.structures()[i], f)
                                                      : eval_counts(universe.count_classes()[i], f);
    out[i] = v;
  }
  return out;
}

Denotation DenotationCache::get(const Formula& f, const ClassUniverse& universe) {
  auto key = std::make_pair(universe.id(), render(f));
  {
    std::lock_guard lock(mutex_);
    if (auto it = table_.find(key); it != table_.end()) return it->second;
  }
  Denotation d = denotation(f, universe);
  std::lock_guard lock(mutex_);
  table_.emplace(std::move(key), d);
  return d;
}

std::size_t DenotationCache::entries() const {
  std::lock_guard lock(mutex_);
  return table_.size();
}

}  // namespace dcx
