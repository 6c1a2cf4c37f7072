#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "ncfree/errors.hpp"

namespace ncfree {

// All arithmetic in this library is exact. Int is an arbitrary-precision
// integer, Rat an always-normalized rational (gcd-reduced, positive
// denominator).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int factorial(long n) {
  if (n < 0) throw domain_error("factorial of negative argument " + std::to_string(n));
  Int r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  Int r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i; // exact at every step: r is binom(n-k+i, i)
  }
  return r;
}

// Integer quotient with the divisibility proved by the caller's math;
// a nonzero remainder means a transcription bug, not a data problem.
inline Int exact_div(const Int& a, const Int& b) {
  Int q, r;
  boost::multiprecision::divide_qr(a, b, q, r);
  if (r != 0)
    throw std::logic_error("exact_div: " + a.str() + " not divisible by " + b.str());
  return q;
}

inline Int pow_int(Int base, unsigned long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Rat pow_rat(const Rat& base, long e) {
  if (e < 0) {
    if (base == 0) throw domain_error("pow_rat: zero base with negative exponent");
    Rat inv(denominator(base), numerator(base));
    return pow_rat(inv, -e);
  }
  Rat r = 1, b = base;
  auto u = static_cast<unsigned long>(e);
  while (u) {
    if (u & 1) r *= b;
    b *= b;
    u >>= 1;
  }
  return r;
}

// floor(x^(1/n)) for x >= 0, by bisection on big integers.
inline Int iroot_floor(const Int& x, unsigned n) {
  if (n == 0) throw domain_error("iroot_floor: zeroth root");
  if (x < 0) throw domain_error("iroot_floor: negative radicand");
  if (x <= 1 || n == 1) return x;
  Int lo = 0;
  Int hi = 1;
  while (pow_int(hi, n) <= x) hi <<= 1;
  // invariant: lo^n <= x < hi^n
  while (hi - lo > 1) {
    Int mid = (lo + hi) >> 1;
    if (pow_int(mid, n) <= x)
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

// Certified lower approximation of x^(1/n): returns t with
// t <= x^(1/n) < t + 10^-digits (both comparisons exact).
inline Rat root_lower(const Rat& x, unsigned n, unsigned digits = 12) {
  if (x < 0) throw domain_error("root_lower: negative radicand");
  Int scale = pow_int(10, digits);
  Int scaled = numerator(x) * pow_int(scale, n) / denominator(x); // floor
  return Rat(iroot_floor(scaled, n), scale);
}

// Certified upper approximation: x^(1/n) <= result < x^(1/n) + 10^-digits.
inline Rat root_upper(const Rat& x, unsigned n, unsigned digits = 12) {
  Rat t = root_lower(x, n, digits);
  if (pow_rat(t, static_cast<long>(n)) == x) return t;
  return t + Rat(1, pow_int(10, digits));
}

// "p/q", "p", or a plain decimal like "-1.25"; no exponents.
inline Rat parse_rational(std::string_view s) {
  auto bad = [&] { return parse_error("bad rational literal: '" + std::string(s) + "'"); };
  if (s.empty()) throw bad();
  auto slash = s.find('/');
  try {
    if (slash != std::string_view::npos) {
      Int p(std::string(s.substr(0, slash)));
      Int q(std::string(s.substr(slash + 1)));
      if (q == 0) throw bad();
      return Rat(p, q);
    }
    auto dot = s.find('.');
    if (dot == std::string_view::npos) return Rat(Int(std::string(s)));
    std::string digits = std::string(s.substr(0, dot)) + std::string(s.substr(dot + 1));
    size_t frac_len = s.size() - dot - 1;
    if (frac_len == 0 || digits.empty()) throw bad();
    bool neg = false;
    if (digits[0] == '+' || digits[0] == '-') {
      neg = digits[0] == '-';
      digits.erase(0, 1);
    }
    if (digits.empty()) throw bad();
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
    Rat r(Int(digits), pow_int(10, frac_len));
    return neg ? -r : r;
  } catch (const std::exception&) {
    throw bad();
  }
}

// Canonical emission: integers without "/1".
inline std::string format_rational(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// Fixed-point decimal rendering for reports (truncated toward zero).
inline std::string to_decimal(const Rat& r, unsigned digits = 12) {
  Int num = numerator(r), den = denominator(r);
  bool neg = num < 0;
  if (neg) num = -num;
  Int scaled = num * pow_int(10, digits) / den;
  std::string s = scaled.str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

} // namespace ncfree
