// Class sizes, class-probability distributions and their entropies.
// Counts and probabilities are exact; logarithms are taken last, in bits.

#ifndef DCX_ENTROPY_HPP
#define DCX_ENTROPY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "dcx/bigint.hpp"
#include "dcx/models.hpp"
#include "dcx/syntax.hpp"

namespace dcx {

struct PartitionClass {
  std::string label;  // "{+,-}" for MLU, "[2,1]" for GMLU
  BigInt size;
};

struct Partition {
  Dialect dialect = Dialect::gmlu;
  int k = 0;
  int n = 0;
  BigInt universe_size;  // 2^{kn}
  std::vector<PartitionClass> classes;
};

// Number of models on n worlds realizing exactly a fixed set of `types` types.
BigInt surjection_count(int types, int n);
BigInt multinomial(const std::vector<int>& parts);

// Classes in ClassUniverse::mlu(k, n) order; sizes by inclusion-exclusion.
Partition mlu_partition(int k, int n);
// Classes in count_vectors(k, n) order; sizes are multinomial coefficients.
Partition gmlu_partition(int k, int n);

struct EntropyStats {
  double shannon_bits = 0;
  double expected_boltzmann_bits = 0;
  double log_universe_bits = 0;
  // shannon + expected_boltzmann - log_universe.
  double identity_residual() const;
};

EntropyStats entropy_stats(const Partition& p);

struct ClassStats {
  std::string label;
  BigInt size;
  Rational probability;
  double boltzmann_bits = 0;
};

std::vector<ClassStats> class_stats(const Partition& p);

// <H_B> / (k n) over the GMLU partition.
double expected_boltzmann_ratio(int k, int n);

// Mass of the classes whose every type frequency lies within delta of 2^-k.
// delta is read as the decimal it prints as: 0.1 is exactly 1/10.
Rational i_delta_mass(int k, int n, double delta);

// Smallest n <= n_max whose mass exceeds `level`, or -1.
int i_delta_threshold(int k, double delta, const Rational& level, int n_max);

// 2^k (2^-k - delta) log2(2^k / (1 + delta 2^k)) (1 - delta); needs 0 <= delta < 2^-k.
double f_delta(int k, double delta);

struct MissingTypeProbability {
  Rational exact;
  double union_bound = 0;  // 2^k (1 - 2^-k)^n
};

MissingTypeProbability missing_type_probability(int k, int n);

// Smallest n0 <= n_max such that the full-type-set class is strictly the
// largest MLU class for every n in [n0, n_max]; -1 if none.
int largest_class_threshold(int k, int n_max);

// log2(n!) - (n log2 n - n log2 e); n >= 2.
double stirling_gap(int n);

// <H_B> - n * E[empirical type entropy] over the GMLU partition. The
// per-element rewriting of <H_B> predicts a gap of order log n.
double per_element_rewrite_gap(int k, int n);

// Mean over trials of max_i |n_i/n - 2^-k| for uniformly random models.
double lln_demo(int k, int n, int trials, std::uint64_t seed);

}  // namespace dcx

#endif  // DCX_ENTROPY_HPP
