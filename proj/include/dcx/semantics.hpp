// Truth evaluation and denotations over indexed universes of equivalence classes.

#ifndef DCX_SEMANTICS_HPP
#define DCX_SEMANTICS_HPP

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "dcx/models.hpp"
#include "dcx/syntax.hpp"

namespace dcx {

// Pointed evaluation: literals read the type of `world`, modalities count
// over the whole model.
bool eval_at(const KripkeModel& model, int world, const Formula& f);

// Same, with the model given by its type counts and the point by its type.
bool eval_at_type(const TypeCountVector& counts, std::uint32_t point_mask, const Formula& f);

// Point-free truth of a guarded MLU/GMLU formula.
bool eval_gmlu(const KripkeModel& model, const Formula& f);
bool eval_counts(const TypeCountVector& counts, const Formula& f);

// Truth of an FO sentence; n <= 6.
bool eval_fo(const RelationalStructure& s, const Formula& sentence);
// Open formula under an assignment; assignment[v] is the value of x_{v+1}.
bool eval_fo_open(const RelationalStructure& s, const Formula& f, std::span<const int> assignment);

using Denotation = boost::dynamic_bitset<>;

// Indexed classes of one dialect at fixed k (or arities) and n.
//   mlu:  nonempty TypeSets in bit order; with n > 0 only those with |Pi| <= n.
//   gmlu: compositions of n into 2^k parts, in count_vectors order.
//   fo:   canonical forms of all structures on n elements, sorted.
class ClassUniverse {
 public:
  static ClassUniverse mlu(int k, int n = 0);
  static ClassUniverse gmlu(int k, int n);
  static ClassUniverse fo(std::vector<int> arities, int n);

  Dialect dialect() const { return dialect_; }
  int k() const { return k_; }
  int n() const { return n_; }
  const std::vector<int>& arities() const { return arities_; }
  std::size_t size() const;
  // Stable identity used for cache keys, e.g. "gmlu:k=1:n=3".
  const std::string& id() const { return id_; }
  std::string label(std::size_t i) const;

  // Modal dialects: class i as a count vector (MLU classes use count 1 per type).
  const std::vector<TypeCountVector>& count_classes() const { return counts_; }
  const std::vector<TypeSet>& type_sets() const { return type_sets_; }
  const std::vector<RelationalStructure>& structures() const { return structures_; }

  // Index of the class containing the model; throws DomainError when absent.
  std::size_t index_of(const KripkeModel& model) const;
  std::size_t index_of(const TypeCountVector& counts) const;
  std::size_t index_of(const TypeSet& set) const;
  std::size_t index_of(const RelationalStructure& s) const;

 private:
  ClassUniverse() = default;
  Dialect dialect_ = Dialect::mlu;
  int k_ = 0;
  int n_ = 0;
  std::vector<int> arities_;
  std::string id_;
  std::vector<TypeCountVector> counts_;
  std::vector<TypeSet> type_sets_;
  std::vector<RelationalStructure> structures_;
};

Denotation denotation(const Formula& f, const ClassUniverse& universe);

// Thread-safe memo of denotations keyed on (universe id, rendering).
class DenotationCache {
 public:
  Denotation get(const Formula& f, const ClassUniverse& universe);
  std::size_t entries() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::string, std::string>, Denotation> table_;
};

}  // namespace dcx

#endif  // DCX_SEMANTICS_HPP
