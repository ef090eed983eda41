// Exact arithmetic aliases and the few helpers every counting module needs.

#ifndef DCX_BIGINT_HPP
#define DCX_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace dcx {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(int n, int r);
BigInt factorial(int n);
BigInt pow2(unsigned long e);
BigInt ipow(const BigInt& base, unsigned long e);

// log2 of a positive integer, accurate far beyond the range of double.
double log2_big(const BigInt& x);
double to_double(const Rational& q);

std::string to_string(const BigInt& x);
std::string to_string(const Rational& q);

}  // namespace dcx

#endif  // DCX_BIGINT_HPP
