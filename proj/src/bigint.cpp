#include "dcx/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace dcx {

BigInt binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  BigInt acc = 1;
  for (int i = 1; i <= r; ++i) {
    acc *= n - r + i;
    acc /= i;
  }
  return acc;
}

BigInt factorial(int n) {
  BigInt acc = 1;
  for (int i = 2; i <= n; ++i) acc *= i;
  return acc;
}

BigInt pow2(unsigned long e) {
  BigInt one = 1;
  return one << e;
}

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt acc = 1;
  BigInt b = base;
  while (e != 0) {
    if (e & 1UL) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

double log2_big(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log2_big: argument must be positive");
  const unsigned msb = boost::multiprecision::msb(x);
  if (msb < 60) return std::log2(x.convert_to<double>());
  const unsigned shift = msb - 60;
  BigInt top = x >> shift;
  return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

double to_double(const Rational& q) {
  BigInt num = boost::multiprecision::numerator(q);
  BigInt den = boost::multiprecision::denominator(q);
  if (num == 0) return 0.0;
  const bool negative = num < 0;
  if (negative) num = -num;
  const int diff = static_cast<int>(boost::multiprecision::msb(num)) -
                   static_cast<int>(boost::multiprecision::msb(den));
  const int shift = 64 - diff;
  BigInt scaled = shift >= 0 ? BigInt((num << shift) / den) : BigInt((num >> -shift) / den);
  double v = std::ldexp(scaled.convert_to<double>(), -shift);
  return negative ? -v : v;
}

std::string to_string(const BigInt& x) { return x.str(); }

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace dcx
