#include "dcx/census.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "dcx/errors.hpp"
#include "dcx/models.hpp"
#include "dcx/syntax.hpp"

namespace dcx {

namespace {

void check_arities(const std::vector<int>& arities) {
  if (arities.empty()) throw DomainError("vocabulary needs at least one relation");
  for (int a : arities)
    if (a < 1 || a > 3) throw DomainError("relation arities must lie in 1..3");
}

// Cycle types of S_n as nonincreasing part lists.
void partitions(int rest, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (rest == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(rest, max_part); p >= 1; --p) {
    cur.push_back(p);
    partitions(rest - p, p, cur, out);
    cur.pop_back();
  }
}

// Permutations of S_n with the given cycle type: n! / prod(l^m m!).
BigInt class_size(const std::vector<int>& cycles, int n) {
  BigInt denom = 1;
  std::size_t i = 0;
  while (i < cycles.size()) {
    std::size_t j = i;
    while (j < cycles.size() && cycles[j] == cycles[i]) ++j;
    const auto mult = static_cast<int>(j - i);
    denom *= ipow(BigInt(cycles[i]), static_cast<unsigned long>(mult)) * factorial(mult);
    i = j;
  }
  return factorial(n) / denom;
}

// Orbits of a permutation with these cycles on a-tuples: over each choice of
// one cycle per coordinate, prod(lengths) / lcm(lengths).
std::uint64_t tuple_orbits(const std::vector<int>& cycles, int a) {
  std::uint64_t total = 0;
  std::vector<std::size_t> pick(static_cast<std::size_t>(a), 0);
  while (true) {
    std::uint64_t prod = 1, l = 1;
    for (auto c : pick) {
      const auto len = static_cast<std::uint64_t>(cycles[c]);
      prod *= len;
      l = std::lcm(l, len);
    }
    total += prod / l;
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == cycles.size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
  return total;
}

}  // namespace

std::uint64_t cell_total(const std::vector<int>& arities, int n) {
  std::uint64_t total = 0;
  for (int a : arities) {
    std::uint64_t t = 1;
    for (int i = 0; i < a; ++i) t *= static_cast<std::uint64_t>(n);
    total += t;
  }
  return total;
}

BigInt iso_count_burnside(const std::vector<int>& arities, int n) {
  check_arities(arities);
  if (n < 1) throw DomainError("census needs n >= 1");
  if (n > 7) throw CapExceeded("Burnside counting limited to n <= 7");
  std::vector<std::vector<int>> types;
  std::vector<int> cur;
  partitions(n, n, cur, types);
  BigInt fixed_total = 0;
  for (const auto& cycles : types) {
    std::uint64_t orbits = 0;
    for (int a : arities) orbits += tuple_orbits(cycles, a);
    fixed_total += class_size(cycles, n) * pow2(orbits);
  }
  return fixed_total / factorial(n);
}

BigInt iso_count_exhaustive(const std::vector<int>& arities, int n) {
  check_arities(arities);
  std::set<RelationalStructure> seen;
  for_each_structure(arities, n, [&](const RelationalStructure& s) { seen.insert(canonical_form(s)); });
  return BigInt(seen.size());
}

BigInt rigid_labeled_count(const std::vector<int>& arities, int n) {
  check_arities(arities);
  std::uint64_t rigid = 0;
  for_each_structure(arities, n, [&](const RelationalStructure& s) { rigid += is_rigid(s) ? 1 : 0; });
  return BigInt(rigid);
}

double CensusRow::rigid_fraction() const {
  if (!rigid_labeled) return std::numeric_limits<double>::quiet_NaN();
  return to_double(Rational(*rigid_labeled, labeled));
}

double CensusRow::fagin_ratio() const { return to_double(Rational(iso * factorial(n), labeled)); }

std::vector<CensusRow> census(const std::vector<int>& arities, int n_max) {
  check_arities(arities);
  if (n_max < 1) throw DomainError("census needs n_max >= 1");
  std::vector<CensusRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    CensusRow row{n, pow2(cell_total(arities, n)), iso_count_burnside(arities, n), std::nullopt};
    if (cell_total(arities, n) <= 24) row.rigid_labeled = rigid_labeled_count(arities, n);
    rows.push_back(std::move(row));
  }
  return rows;
}

BigInt sentence_count_bound(const std::vector<int>& arities, int n, int s) {
  check_arities(arities);
  if (s < 2) throw DomainError("sentence_count_bound needs s >= 2");
  if (n < 1) throw DomainError("sentence_count_bound needs n >= 1");
  const double atoms = static_cast<double>(cell_total(arities, n));
  const double bits = std::ceil(10.0 * s * std::log2(atoms + 4.0));
  return pow2(static_cast<unsigned long>(bits));
}

BigInt count_fo_sentences(const std::vector<int>& arities, int vars, int s) {
  check_arities(arities);
  if (vars < 1 || vars > 4) throw DomainError("sentence counting needs 1..4 variables");
  if (s < 1) return 0;
  const std::size_t masks = std::size_t{1} << vars;
  // by[size][free-variable mask]
  std::vector<std::vector<BigInt>> by(static_cast<std::size_t>(s) + 1, std::vector<BigInt>(masks));
  for (int x = 0; x < vars; ++x)
    for (int y = 0; y < vars; ++y) by[1][(1U << x) | (1U << y)] += 2;  // = and !=
  for (int a : arities) {
    std::vector<int> args(static_cast<std::size_t>(a), 0);
    while (true) {
      std::uint32_t m = 0;
      for (int v : args) m |= 1U << v;
      by[1][m] += 2;
      std::size_t pos = 0;
      while (pos < args.size() && ++args[pos] == vars) args[pos++] = 0;
      if (pos == args.size()) break;
    }
  }
  for (int size = 2; size <= s; ++size) {
    auto& row = by[static_cast<std::size_t>(size)];
    for (int l = 1; l <= size - 2; ++l)
      for (std::size_t ml = 0; ml < masks; ++ml)
        for (std::size_t mr = 0; mr < masks; ++mr)
          row[ml | mr] += 2 * by[static_cast<std::size_t>(l)][ml] * by[static_cast<std::size_t>(size - 1 - l)][mr];
    for (int v = 0; v < vars; ++v)
      for (std::size_t m = 0; m < masks; ++m)
        row[m & ~(std::size_t{1} << v)] += 2 * by[static_cast<std::size_t>(size - 1)][m];
  }
  BigInt total = 0;
  for (int size = 1; size <= s; ++size) total += by[static_cast<std::size_t>(size)][0];
  return total;
}

std::uint64_t enumerate_fo_sentences(const std::vector<int>& arities, int vars, int s) {
  check_arities(arities);
  if (vars < 1 || vars > 4) throw DomainError("sentence enumeration needs 1..4 variables");
  if (s > 5) throw CapExceeded("explicit sentence enumeration limited to size 5");
  std::vector<std::vector<Formula>> by(static_cast<std::size_t>(std::max(s, 1)) + 1);
  for (int x = 0; x < vars; ++x)
    for (int y = 0; y < vars; ++y)
      for (bool pos : {true, false}) by[1].push_back(Formula::equality(x, y, pos));
  for (std::size_t r = 0; r < arities.size(); ++r) {
    std::vector<int> args(static_cast<std::size_t>(arities[r]), 0);
    while (true) {
      for (bool pos : {true, false}) by[1].push_back(Formula::atom(static_cast<int>(r), args, pos));
      std::size_t p = 0;
      while (p < args.size() && ++args[p] == vars) args[p++] = 0;
      if (p == args.size()) break;
    }
  }
  for (int size = 2; size <= s; ++size) {
    auto& row = by[static_cast<std::size_t>(size)];
    for (int l = 1; l <= size - 2; ++l)
      for (const auto& a : by[static_cast<std::size_t>(l)])
        for (const auto& b : by[static_cast<std::size_t>(size - 1 - l)]) {
          row.push_back(Formula::conjunction(a, b));
          row.push_back(Formula::disjunction(a, b));
        }
    for (const auto& c : by[static_cast<std::size_t>(size - 1)])
      for (int v = 0; v < vars; ++v) {
        row.push_back(Formula::exists(v, c));
        row.push_back(Formula::forall(v, c));
      }
  }
  std::uint64_t count = 0;
  for (int size = 1; size <= s; ++size)
    for (const auto& f : by[static_cast<std::size_t>(size)])
      if (free_variables(f) == 0) ++count;
  return count;
}

RatioTest ratio_test(const std::vector<int>& arities, long long n, double c, double d) {
  check_arities(arities);
  if (!(c > 0) || !(d > 0) || n < 2) throw DomainError("ratio_test needs c, d > 0 and n >= 2");
  int m = 0;
  for (int a : arities) m = std::max(m, a);
  const auto nn = static_cast<double>(n);
  const double exponent = 10.0 * c * d + std::log2(nn) / std::pow(nn, m - 1) - 1.0;
  return {exponent, std::exp2(exponent)};
}

BoundComparison bound_point(int m, double c, long long n) {
  if (m < 2) throw DomainError("bounds need m >= 2");
  if (n < 2) throw DomainError("bounds need n >= 2");
  const auto nn = static_cast<double>(n);
  const double lg = std::log2(nn);
  return {n, nn * lg - nn * std::log2(std::exp(1.0)) + 2.0 * lg, 0.5 * c * std::pow(nn, m) / lg};
}

BoundsReport bounds_compare(int m, double c, long long n_lo, long long n_hi,
                            const std::vector<long long>& samples) {
  if (n_lo < 2 || n_hi < n_lo) throw DomainError("bounds_compare needs 2 <= n_lo <= n_hi");
  if (!(c > 0)) throw DomainError("bounds_compare needs c > 0");
  BoundsReport rep;
  for (long long n : samples) rep.rows.push_back(bound_point(m, c, n));
  for (long long n = n_lo; n <= n_hi; ++n) {
    const auto p = bound_point(m, c, n);
    if (p.c_lower > p.hb_upper) {
      rep.crossover = n;
      break;
    }
  }
  return rep;
}

}  // namespace dcx
