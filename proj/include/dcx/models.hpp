// Finite models over the fixed domain {1..n}: Kripke models without
// accessibility (one 1-type per world) and relational structures.
// Worlds and domain elements are 0-based in the API and 1-based in text.

#ifndef DCX_MODELS_HPP
#define DCX_MODELS_HPP

#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dcx/syntax.hpp"

namespace dcx {

// Enumeration cap for Kripke models: k * n <= 24.
inline constexpr int kMaxKripkeBits = 24;
// Structures are canonicalized by trying all n! relabelings.
inline constexpr int kMaxCanonicalDomain = 6;

class KripkeModel {
 public:
  KripkeModel(int k, std::vector<OneType> types);
  static KripkeModel from_masks(int k, const std::vector<std::uint32_t>& masks);

  int k() const { return k_; }
  int n() const { return static_cast<int>(types_.size()); }
  OneType type_at(int world) const { return types_[static_cast<std::size_t>(world)]; }
  const std::vector<OneType>& types() const { return types_; }

  friend bool operator==(const KripkeModel&, const KripkeModel&) = default;

 private:
  int k_;
  std::vector<OneType> types_;
};

struct PointedModel {
  KripkeModel model;
  int point = 0;
};

// Subset of the 2^k 1-types, bit m set iff the type with mask m is present.
class TypeSet {
 public:
  TypeSet(std::uint64_t bits, int k);
  static TypeSet all(int k);

  std::uint64_t bits() const { return bits_; }
  int k() const { return k_; }
  bool contains(std::uint32_t mask) const { return ((bits_ >> mask) & 1U) != 0; }
  int size() const;
  bool empty() const { return bits_ == 0; }
  std::vector<std::uint32_t> masks() const;
  // e.g. "{++,-+}"
  std::string label() const;

  friend bool operator==(const TypeSet&, const TypeSet&) = default;

 private:
  std::uint64_t bits_;
  int k_;
};

// Realization counts n_1..n_l of the l = 2^k types, in mask order.
class TypeCountVector {
 public:
  explicit TypeCountVector(std::vector<int> counts);

  const std::vector<int>& counts() const { return counts_; }
  int operator[](std::size_t i) const { return counts_[i]; }
  int k() const;
  int n() const;
  TypeSet support() const;
  // Indices with a positive count.
  std::vector<int> realized() const;
  // Index of the most frequent type; ties go to the smaller index.
  int largest() const;
  // e.g. "[2,1]"
  std::string label() const;

  friend bool operator==(const TypeCountVector&, const TypeCountVector&) = default;
  friend auto operator<=>(const TypeCountVector& a, const TypeCountVector& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  std::vector<int> counts_;
};

struct Classification {
  TypeSet type_set;
  TypeCountVector counts;
};

Classification classify(const KripkeModel& model);

// Every composition of n into 2^k parts, first coordinate descending
// (so [n,0,..] comes first and [0,..,n] last).
std::vector<TypeCountVector> count_vectors(int k, int n);

// Model whose worlds list the types in mask order with the given multiplicities.
KripkeModel representative(const TypeCountVector& counts);

// All (2^k)^n Kripke models on n worlds, lexicographic in the world types
// (world 1 most significant).
class KripkeRange {
 public:
  KripkeRange(int k, int n);

  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = KripkeModel;
    using difference_type = std::ptrdiff_t;
    using pointer = const KripkeModel*;
    using reference = KripkeModel;

    iterator() = default;
    iterator(int k, int n, std::uint64_t index) : k_(k), n_(n), index_(index) {}
    KripkeModel operator*() const;
    iterator& operator++() {
      ++index_;
      return *this;
    }
    iterator operator++(int) {
      auto old = *this;
      ++index_;
      return old;
    }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    int k_ = 1;
    int n_ = 1;
    std::uint64_t index_ = 0;
  };

  iterator begin() const { return {k_, n_, 0}; }
  iterator end() const { return {k_, n_, count_}; }
  std::uint64_t size() const { return count_; }

 private:
  int k_;
  int n_;
  std::uint64_t count_;
};

inline KripkeRange enumerate_kripke(int k, int n) { return KripkeRange(k, n); }

KripkeModel parse_kripke(std::string_view text, int k);
std::string format_kripke(const KripkeModel& model);

// ----------------------------------------------------------------- structures

class RelationalStructure {
 public:
  RelationalStructure(int n, std::vector<int> arities);

  int n() const { return n_; }
  const std::vector<int>& arities() const { return arities_; }
  std::size_t relation_count() const { return arities_.size(); }
  // Number of a-tuples for relation r: n^a.
  std::size_t cell_count(std::size_t r) const { return cells_[r].size(); }

  bool holds(std::size_t r, std::span<const int> tuple) const;
  void set(std::size_t r, std::span<const int> tuple, bool value = true);
  bool cell(std::size_t r, std::size_t code) const { return cells_[r][code] != 0; }
  void set_cell(std::size_t r, std::size_t code, bool value) { cells_[r][code] = value ? 1 : 0; }

  // Tuple code: base-n digits, first coordinate most significant.
  std::size_t encode(std::span<const int> tuple) const;
  std::vector<int> decode(std::size_t r, std::size_t code) const;

  // Image under the relabeling i -> perm[i].
  RelationalStructure permuted(std::span<const int> perm) const;

  friend bool operator==(const RelationalStructure&, const RelationalStructure&) = default;
  // Relation by relation, comparing the sorted tuple lists lexicographically.
  friend bool operator<(const RelationalStructure& a, const RelationalStructure& b);

 private:
  int n_;
  std::vector<int> arities_;
  std::vector<std::vector<std::uint8_t>> cells_;
};

// Lexicographically least isomorphic copy.
RelationalStructure canonical_form(const RelationalStructure& s);
// Order of the automorphism group.
std::uint64_t automorphism_count(const RelationalStructure& s);
inline bool is_rigid(const RelationalStructure& s) { return automorphism_count(s) == 1; }

// Every labeled structure over {1..n}; total cell count capped at 24.
template <typename F>
void for_each_structure(const std::vector<int>& arities, int n, F&& f);

RelationalStructure parse_structure(std::string_view text, const Vocabulary& vocab);
std::string format_structure(const RelationalStructure& s);

// ---------------------------------------------------------- implementation

std::size_t total_cells(const std::vector<int>& arities, int n);
[[noreturn]] void throw_structure_cap(std::size_t cells);

template <typename F>
void for_each_structure(const std::vector<int>& arities, int n, F&& f) {
  const std::size_t cells = total_cells(arities, n);
  if (cells > 24) throw_structure_cap(cells);
  RelationalStructure s(n, arities);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cells); ++bits) {
    std::size_t bit = 0;
    for (std::size_t r = 0; r < s.relation_count(); ++r)
      for (std::size_t c = 0; c < s.cell_count(r); ++c, ++bit)
        s.set_cell(r, c, ((bits >> (cells - 1 - bit)) & 1U) != 0);
    f(static_cast<const RelationalStructure&>(s));
  }
}

}  // namespace dcx

#endif  // DCX_MODELS_HPP
