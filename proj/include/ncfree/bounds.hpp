#pragma once

#include <string>
#include <vector>

#include "ncfree/errors.hpp"
#include "ncfree/measure.hpp"
#include "ncfree/rational.hpp"

namespace ncfree {

// Rational over-approximation of e, accurate to < 1e-18. Using an upper
// bound keeps every certificate built from it a genuine upper bound.
inline const Rat& euler_upper() {
  static const Rat e(Int("2718281828459045236"), pow_int(10, 18));
  return e;
}

// |kappa_n(mu)| < (26 L)^{n-1} for a mean-1 law on [0, L]. Mean 1 on
// [0, L] forces L >= 1, so smaller L is rejected outright.
inline Rat cumulant_bound(const Rat& L, int n) {
  if (L < 1)
    throw domain_error("cumulant_bound: L < 1 is impossible for a mean-1 law on [0,L]");
  if (n < 1) throw domain_error("cumulant_bound: n must be positive");
  return pow_rat(Rat(26) * L, n - 1);
}

// k*sigma^2 + 1 <= L_k: variance additivity pushes the edge up linearly.
inline Rat support_lower_bound(int k, const Rat& sigma2) {
  if (k < 1) throw domain_error("support_lower_bound: k must be positive");
  if (sigma2 < 0) throw domain_error("support_lower_bound: variance must be nonnegative");
  return Rat(k) * sigma2 + 1;
}

// L_k < C * L * (k+1) with C = 26e in general, C = e when all inputs
// have nonnegative free cumulants.
inline Rat support_upper_bound(int k, const Rat& L, bool nonneg_cumulants) {
  if (k < 1) throw domain_error("support_upper_bound: k must be positive");
  if (L < 1)
    throw domain_error("support_upper_bound: L < 1 is impossible for a mean-1 law on [0,L]");
  Rat c = nonneg_cumulants ? euler_upper() : Rat(26) * euler_upper();
  return c * L * Rat(k + 1);
}

// Certified edge bracket for a k-fold product of mean-1 laws sharing a
// support bound L and a variance floor sigma2.
struct BoundCertificate {
  int k = 0;
  Rat L;
  Rat sigma2;
  Rat lower;              // k*sigma2 + 1
  Rat upper;              // constant * L * (k+1)
  Rat constant;           // the rational stand-in actually used
  std::string constant_kind; // "e" or "26e"
  bool nonneg_cumulants = false;

  friend bool operator==(const BoundCertificate&, const BoundCertificate&) = default;
};

inline BoundCertificate make_bound_certificate(int k, const Rat& L, const Rat& sigma2,
                                               bool nonneg_cumulants) {
  if (sigma2 > L - 1)
    throw domain_error("make_bound_certificate: variance " + format_rational(sigma2) +
                       " exceeds L-1; inconsistent with a mean-1 law on [0,L]");
  BoundCertificate c;
  c.k = k;
  c.L = L;
  c.sigma2 = sigma2;
  c.lower = support_lower_bound(k, sigma2);
  c.upper = support_upper_bound(k, L, nonneg_cumulants);
  c.constant = nonneg_cumulants ? euler_upper() : Rat(26) * euler_upper();
  c.constant_kind = nonneg_cumulants ? "e" : "26e";
  c.nonneg_cumulants = nonneg_cumulants;
  return c;
}

// m_n^(1/n) for n = 1..N, each rounded down, so every entry is a
// certified lower bound on the support edge of a measure on [0, inf).
// For such a measure the exact sequence is non-decreasing in n.
inline std::vector<Rat> estimate_support_edge(const MeasureSpec& spec, int N,
                                              unsigned digits = 12) {
  auto m = spec.moments(N);
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    if (m.at(n) <= 0)
      throw domain_error("estimate_support_edge: moment m_" + std::to_string(n) +
                         " is not positive; not a positive measure to this order");
    out.push_back(root_lower(m.at(n), static_cast<unsigned>(n), digits));
  }
  return out;
}

} // namespace ncfree
