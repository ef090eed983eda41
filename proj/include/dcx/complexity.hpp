// Minimal defining formulas by bottom-up search over denotations, and the
// explicit defining formulas with their exact sizes.
//
// Modal search state: a set of (model, realized type) pairs. A formula whose
// literals all sit under some modality ("guarded") denotes a union of whole
// models; only guarded formulas define classes. Unguarded ("free") formulas
// appear as modality bodies, where they may mix literals and modalities.

#ifndef DCX_COMPLEXITY_HPP
#define DCX_COMPLEXITY_HPP

#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "dcx/bitvec.hpp"
#include "dcx/models.hpp"
#include "dcx/semantics.hpp"
#include "dcx/syntax.hpp"

namespace dcx {

struct Witness {
  int size = 0;
  Formula formula;
  std::string text;
};

struct DpOptions {
  // Skip binary nodes with a constant child (never needed by a minimal witness).
  bool prune_constants = false;
  // Hard ceiling on stored denotations, per table.
  std::size_t max_entries = 3'000'000;
};

class ModalDp {
 public:
  // Models are given by type counts; grades range over 1..max_grade.
  ModalDp(std::vector<TypeCountVector> models, int max_grade, DpOptions options = {});

  // Class universe i -> model i; MLU universes use grade 1, GMLU grades up to n + 1.
  static ModalDp for_universe(const ClassUniverse& universe, DpOptions options = {});

  std::size_t model_count() const { return models_.size(); }
  std::size_t pair_count() const { return pair_model_.size(); }
  const TypeCountVector& model(std::size_t m) const { return models_[m]; }
  // Index of pair (m, type mask), or -1 when the model does not realize the type.
  int pair_index(std::size_t m, std::uint32_t mask) const;
  BitVec model_bits(std::size_t m) const;
  BitVec all_bits() const { return BitVec::first_n(pair_count()); }
  // Pairs of every model whose bit is set.
  BitVec lift(const Denotation& classes) const;

  // Pair-level denotation of any modal formula.
  BitVec denote(const Formula& f) const;

  void extend_to(int budget);
  int completed_budget() const { return done_; }
  std::size_t free_entries() const { return free_.best.size(); }
  std::size_t guarded_entries() const { return guarded_.best.size(); }

  // Minimal guarded / free formula with exactly this pair denotation.
  std::optional<Witness> guarded(const BitVec& bits, int budget);
  std::optional<Witness> free(const BitVec& bits, int budget);
  // Minimal guarded formula true on every pair of `accept` and no pair of `reject`.
  std::optional<Witness> separating(const BitVec& accept, const BitVec& reject, int budget);

 private:
  struct Table {
    std::unordered_map<BitVec, std::uint32_t, BitVecHash> best;  // key -> slot
    std::deque<Witness> slots;                                  // stable addresses
    std::vector<std::vector<BitVec>> at;  // at[s]: keys whose minimum is s
    const Witness& get(const BitVec& key) const { return slots[best.at(key)]; }
  };

  BitVec modal(bool diamond, int grade, const BitVec& x) const;
  void offer(Table& t, const BitVec& key, int s, NodeKind kind, int grade, const Witness* a,
             const Witness* b);
  void check_size(const Table& t) const;

  std::vector<TypeCountVector> models_;
  int max_grade_;
  DpOptions options_;
  std::vector<std::size_t> pair_model_;
  std::vector<int> pair_weight_;
  std::vector<std::uint32_t> pair_mask_;
  std::vector<std::pair<std::size_t, std::size_t>> model_range_;
  Table free_;
  Table guarded_;
  int done_ = 0;
};

std::optional<Witness> min_size_mlu(int k, int n, const Denotation& target, int budget,
                                    DpOptions options = {});
std::optional<Witness> min_size_gmlu(int k, int n, const Denotation& target, int budget,
                                     DpOptions options = {});

// First-order search over (class representative, assignment) pairs. Every
// state also tracks the set of free variables, so sentences are exactly the
// states with an empty set.
class FoDp {
 public:
  FoDp(const ClassUniverse& universe, int var_cap, DpOptions options = {});

  std::size_t pair_count() const { return pair_count_; }
  void extend_to(int budget);
  std::optional<Witness> sentence(const Denotation& target, int budget);
  std::size_t entries() const { return best_.size(); }

 private:
  struct Key {
    BitVec bits;
    std::uint32_t free_vars = 0;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return k.bits.hash() * 31 + k.free_vars; }
  };

  void offer(const Key& key, int s, NodeKind kind, int param, const Witness* a, const Witness* b,
             std::optional<Formula> leaf = std::nullopt);

  const ClassUniverse* universe_;
  int var_cap_;
  int n_;
  std::size_t assignments_;
  std::size_t pair_count_;
  DpOptions options_;
  std::unordered_map<Key, std::uint32_t, KeyHash> best_;
  std::deque<Witness> slots_;
  std::vector<std::vector<Key>> at_;
  int done_ = 0;
};

std::optional<Witness> min_size_fo(const std::vector<int>& arities, int n, const Denotation& target,
                                   int budget, int var_cap = 2, DpOptions options = {});

// ---------------------------------------------------------- constructions

// Conjunction of diamonds over the types of `types`, then a box excluding
// the remaining types; the box is dropped when every type is present.
Formula construct_phi_pi(int k, const TypeSet& types);
int phi_pi_size(int k, const TypeSet& types);

// Conjunction of "at least n_i points of type i" over realized types.
Formula construct_phi1(const TypeCountVector& counts);
int phi1_size(const TypeCountVector& counts);

// "Only realized types" box, then exact counts for every realized type but
// the most frequent one.
Formula construct_phi2(const TypeCountVector& counts);
int phi2_size(const TypeCountVector& counts);

// min(n, 2(n - largest count)).
int sandwich_lower_bound(const TypeCountVector& counts);

}  // namespace dcx

#endif  // DCX_COMPLEXITY_HPP
