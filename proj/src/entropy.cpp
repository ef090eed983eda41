#include "dcx/entropy.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <random>

#include "dcx/errors.hpp"

namespace dcx {

namespace {

void check_caps(int k, int n) {
  if (k < 1 || n < 1) throw DomainError("partitions need k >= 1 and n >= 1");
  if (k > 4 || n > 200) throw CapExceeded("partitions are limited to k <= 4 and n <= 200");
}

}  // namespace

BigInt surjection_count(int types, int n) {
  BigInt total = 0;
  for (int j = 0; j <= types; ++j) {
    BigInt term = binomial(types, j) * ipow(BigInt(types - j), static_cast<unsigned long>(n));
    if (j % 2) total -= term;
    else total += term;
  }
  return total;
}

BigInt multinomial(const std::vector<int>& parts) {
  BigInt out = 1;
  int run = 0;
  for (int c : parts) {
    run += c;
    out *= binomial(run, c);
  }
  return out;
}

Partition mlu_partition(int k, int n) {
  check_caps(k, n);
  Partition p{Dialect::mlu, k, n, pow2(static_cast<unsigned long>(k * n)), {}};
  const int l = 1 << k;
  std::vector<BigInt> by_size(static_cast<std::size_t>(l) + 1);
  for (int s = 1; s <= std::min(l, n); ++s) by_size[static_cast<std::size_t>(s)] = surjection_count(s, n);
  const std::uint64_t limit = std::uint64_t{1} << l;
  for (std::uint64_t bits = 1; bits < limit; ++bits) {
    TypeSet set(bits, k);
    if (set.size() > n) continue;
    p.classes.push_back({set.label(), by_size[static_cast<std::size_t>(set.size())]});
  }
  return p;
}

Partition gmlu_partition(int k, int n) {
  check_caps(k, n);
  Partition p{Dialect::gmlu, k, n, pow2(static_cast<unsigned long>(k * n)), {}};
  for (const auto& c : count_vectors(k, n)) p.classes.push_back({c.label(), multinomial(c.counts())});
  return p;
}

double EntropyStats::identity_residual() const {
  return shannon_bits + expected_boltzmann_bits - log_universe_bits;
}

EntropyStats entropy_stats(const Partition& p) {
  if (p.classes.empty()) throw DomainError("entropy of an empty partition");
  const long double log_total = log2_big(p.universe_size);
  long double shannon = 0, boltzmann = 0;
  for (const auto& c : p.classes) {
    const long double log_size = log2_big(c.size);
    const long double prob = to_double(Rational(c.size, p.universe_size));
    shannon -= prob * (log_size - log_total);
    boltzmann += prob * log_size;
  }
  return {static_cast<double>(shannon), static_cast<double>(boltzmann), static_cast<double>(log_total)};
}

std::vector<ClassStats> class_stats(const Partition& p) {
  std::vector<ClassStats> out;
  out.reserve(p.classes.size());
  for (const auto& c : p.classes)
    out.push_back({c.label, c.size, Rational(c.size, p.universe_size), log2_big(c.size)});
  return out;
}

double expected_boltzmann_ratio(int k, int n) {
  return entropy_stats(gmlu_partition(k, n)).expected_boltzmann_bits / (static_cast<double>(k) * n);
}

namespace {

// The rational whose decimal text is the shortest round-trip form of v, so
// 0.1 means 1/10 and not the nearby dyadic value; strict window edges depend
// on this.
Rational shortest_decimal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific);
  const std::string text(buf, res.ptr);
  const auto e = text.find('e');
  std::string digits;
  int point = 0;
  for (std::size_t i = 0; i < e; ++i) {
    if (text[i] == '.') point = static_cast<int>(digits.size());
    else digits += text[i];
  }
  if (point == 0) point = static_cast<int>(digits.size());
  // value = digits * 10^(exp - (len - point))
  const int shift = std::stoi(text.substr(e + 1)) - static_cast<int>(digits.size()) + point;
  const BigInt mant(digits);
  const BigInt ten = ipow(BigInt(10), static_cast<unsigned long>(std::abs(shift)));
  return shift >= 0 ? Rational(mant * ten) : Rational(mant, ten);
}

}  // namespace

Rational i_delta_mass(int k, int n, double delta) {
  check_caps(k, n);
  if (!(delta > 0)) throw DomainError("i_delta_mass needs delta > 0");
  const Rational d = shortest_decimal(delta);
  // |n_i/n - 2^-k| < d  <=>  |n_i 2^k - n| < d n 2^k.
  const Rational bound = d * n * (1 << k);
  BigInt inside = 0;
  for (const auto& c : count_vectors(k, n)) {
    bool ok = true;
    for (int ni : c.counts()) {
      const long long dev = std::llabs(static_cast<long long>(ni) * (1LL << k) - n);
      if (!(Rational(dev) < bound)) {
        ok = false;
        break;
      }
    }
    if (ok) inside += multinomial(c.counts());
  }
  return Rational(inside, pow2(static_cast<unsigned long>(k * n)));
}

int i_delta_threshold(int k, double delta, const Rational& level, int n_max) {
  for (int n = 1; n <= n_max; ++n)
    if (i_delta_mass(k, n, delta) > level) return n;
  return -1;
}

double f_delta(int k, double delta) {
  const double l = std::ldexp(1.0, k);
  if (k < 1 || !(delta >= 0) || !(delta < 1.0 / l))
    throw DomainError("f_delta needs k >= 1 and 0 <= delta < 2^-k");
  return l * (1.0 / l - delta) * std::log2(l / (1.0 + delta * l)) * (1.0 - delta);
}

MissingTypeProbability missing_type_probability(int k, int n) {
  check_caps(k, n);
  const BigInt total = pow2(static_cast<unsigned long>(k * n));
  const int l = 1 << k;
  const BigInt full = n >= l ? surjection_count(l, n) : BigInt(0);
  const double l_d = l;
  return {Rational(total - full, total), l_d * std::pow(1.0 - 1.0 / l_d, n)};
}

int largest_class_threshold(int k, int n_max) {
  const int l = 1 << k;
  int threshold = -1;
  for (int n = 1; n <= n_max; ++n) {
    bool holds = n >= l;
    if (holds) {
      const BigInt full = surjection_count(l, n);
      for (int s = 1; s < l && holds; ++s) holds = surjection_count(s, n) < full;
    }
    if (!holds) threshold = -1;
    else if (threshold < 0) threshold = n;
  }
  return threshold;
}

double stirling_gap(int n) {
  if (n < 2) throw DomainError("stirling_gap needs n >= 2");
  const long double ln2 = std::log(2.0L);
  const long double log2_fact = std::lgamma(static_cast<long double>(n) + 1) / ln2;
  const long double nn = n;
  return static_cast<double>(log2_fact - (nn * std::log2(nn) - nn / ln2));
}

double per_element_rewrite_gap(int k, int n) {
  const Partition p = gmlu_partition(k, n);
  const auto classes = count_vectors(k, n);
  long double boltzmann = 0, per_element = 0;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const long double prob = to_double(Rational(p.classes[i].size, p.universe_size));
    boltzmann += prob * log2_big(p.classes[i].size);
    long double h = 0;
    for (int c : classes[i].counts())
      if (c > 0) h -= (static_cast<long double>(c) / n) * std::log2(static_cast<long double>(c) / n);
    per_element += prob * h;
  }
  return static_cast<double>(boltzmann - n * per_element);
}

double lln_demo(int k, int n, int trials, std::uint64_t seed) {
  if (trials < 1 || n < 1 || k < 1 || k > 16) throw DomainError("lln_demo needs trials, n >= 1 and 1 <= k <= 16");
  std::mt19937_64 rng(seed);
  const std::size_t l = std::size_t{1} << k;
  const double expected = 1.0 / static_cast<double>(l);
  double sum = 0;
  std::vector<int> counts(l);
  for (int t = 0; t < trials; ++t) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int w = 0; w < n; ++w) ++counts[static_cast<std::size_t>(rng() >> (64 - k))];
    double worst = 0;
    for (int c : counts) worst = std::max(worst, std::abs(static_cast<double>(c) / n - expected));
    sum += worst;
  }
  return sum / trials;
}

}  // namespace dcx
