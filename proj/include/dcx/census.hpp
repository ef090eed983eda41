// Counting relational structures up to isomorphism, rigidity, and the
// sentence-count and entropy-vs-complexity bounds for first-order logic.

#ifndef DCX_CENSUS_HPP
#define DCX_CENSUS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dcx/bigint.hpp"

namespace dcx {

// p(n) = sum over relations of n^arity.
std::uint64_t cell_total(const std::vector<int>& arities, int n);

// Orbit count of S_n acting on labeled structures (Burnside over cycle types).
// Pre: n <= 7.
BigInt iso_count_burnside(const std::vector<int>& arities, int n);

// Distinct canonical forms by exhaustive enumeration. Pre: p(n) <= 24, n <= 6.
BigInt iso_count_exhaustive(const std::vector<int>& arities, int n);

// Labeled structures with a trivial automorphism group. Pre: p(n) <= 24.
BigInt rigid_labeled_count(const std::vector<int>& arities, int n);

struct CensusRow {
  int n = 0;
  BigInt labeled;                     // 2^{p(n)}
  BigInt iso;
  std::optional<BigInt> rigid_labeled;  // only where exhaustive enumeration fits
  double rigid_fraction() const;      // NaN without a rigid count
  double fagin_ratio() const;         // iso / (labeled / n!)
};

// Rows n = 1..n_max; rigid counts where p(n) <= 24.
std::vector<CensusRow> census(const std::vector<int>& arities, int n_max);

// N = p(n) atomic formulas; bound 2^{ceil(10 s log2(N + 4))}. Pre: s >= 2.
BigInt sentence_count_bound(const std::vector<int>& arities, int n, int s);

// Sentences (no free variables) of size <= s over variables x1..x_vars,
// counted as syntax trees over NNF atoms, equalities, and/or, exists/forall.
BigInt count_fo_sentences(const std::vector<int>& arities, int vars, int s);

// Same count, by building every tree explicitly. Pre: s <= 5.
std::uint64_t enumerate_fo_sentences(const std::vector<int>& arities, int vars, int s);

struct RatioTest {
  double exponent = 0;  // 10cd + log2(n)/n^{m-1} - 1
  double base = 0;      // 2^exponent
};

// m is the largest arity. Pre: c, d > 0 and n >= 2.
RatioTest ratio_test(const std::vector<int>& arities, long long n, double c, double d);

struct BoundComparison {
  long long n = 0;
  double hb_upper = 0;  // n log2 n - n log2 e + 2 log2 n
  double c_lower = 0;   // c n^m / (2 log2 n)
};

BoundComparison bound_point(int m, double c, long long n);

struct BoundsReport {
  std::vector<BoundComparison> rows;
  std::optional<long long> crossover;  // least n in [n_lo, n_hi] with c_lower > hb_upper
};

// Scans every n in [n_lo, n_hi] for the crossover; rows at `samples`.
BoundsReport bounds_compare(int m, double c, long long n_lo, long long n_hi,
                            const std::vector<long long>& samples);

}  // namespace dcx

#endif  // DCX_CENSUS_HPP
