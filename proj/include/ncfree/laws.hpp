#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ncfree/convolution.hpp"
#include "ncfree/enumerate.hpp"
#include "ncfree/errors.hpp"
#include "ncfree/measure.hpp"
#include "ncfree/rational.hpp"

namespace ncfree {

// The closed-form special laws used throughout: a recipe plus enough
// parameters to materialize a MeasureSpec to any order.
struct NamedLaw {
  enum class Kind { free_poisson, shifted_semicircle, point_mass, two_point, sakuma_h, sakuma_s };

  Kind kind = Kind::free_poisson;
  std::vector<Rat> params;

  static NamedLaw free_poisson() { return {Kind::free_poisson, {}}; }

  // Mean-1 semicircle with variance sigma2 <= 1/4, so the support
  // [1-2sigma, 1+2sigma] stays inside [0, infinity).
  static NamedLaw shifted_semicircle(Rat sigma2) {
    if (sigma2 <= 0 || sigma2 > Rat(1, 4))
      throw domain_error("shifted_semicircle: need 0 < sigma^2 <= 1/4");
    return {Kind::shifted_semicircle, {std::move(sigma2)}};
  }

  static NamedLaw point_mass(Rat c) {
    if (c <= 0) throw domain_error("point_mass: atom must be positive");
    return {Kind::point_mass, {std::move(c)}};
  }

  // Two atoms with weights; the mean is required to be exactly 1.
  static NamedLaw two_point(Rat x1, Rat x2, Rat w1, Rat w2) {
    if (x1 < 0 || x2 < 0) throw domain_error("two_point: atoms must be nonnegative");
    if (x1 == x2) throw domain_error("two_point: atoms must differ");
    if (w1 < 0 || w2 < 0 || w1 + w2 != 1)
      throw domain_error("two_point: weights must be nonnegative and sum to 1");
    if (w1 * x1 + w2 * x2 != 1) throw domain_error("two_point: mean must be 1");
    return {Kind::two_point, {std::move(x1), std::move(x2), std::move(w1), std::move(w2)}};
  }

  // Atoms {0, c} with the weights forced by mean 1; needs c > 1.
  static NamedLaw two_point_zero(const Rat& c) {
    if (c <= 1) throw domain_error("two_point_zero: atom must exceed 1 for a mean-1 law");
    return two_point(Rat(0), c, 1 - Rat(1) / c, Rat(1) / c);
  }

  static NamedLaw sakuma_h(Rat sigma2) {
    if (sigma2 <= 0) throw domain_error("sakuma_h: variance must be positive");
    return {Kind::sakuma_h, {std::move(sigma2)}};
  }

  static NamedLaw sakuma_s(Rat sigma2) {
    if (sigma2 <= 0) throw domain_error("sakuma_s: variance must be positive");
    return {Kind::sakuma_s, {std::move(sigma2)}};
  }

  MeasureSpec materialize(int N) const {
    if (N < 1) throw domain_error("NamedLaw: order must be positive");
    switch (kind) {
      case Kind::free_poisson: {
        MeasureSpec s = MeasureSpec::from_free_cumulants(std::vector<Rat>(static_cast<std::size_t>(N), Rat(1)));
        s.set_name("free-poisson").set_support_bound(Rat(4));
        s.set_declared_mean(Rat(1));
        if (N >= 2) s.set_declared_variance(Rat(1));
        return s;
      }
      case Kind::shifted_semicircle: {
        const Rat& s2 = params[0];
        std::vector<Rat> kappa(static_cast<std::size_t>(N), Rat(0));
        kappa[0] = 1;
        if (N >= 2) kappa[1] = s2;
        MeasureSpec s = MeasureSpec::from_free_cumulants(std::move(kappa));
        // rational upper bound on 1 + 2*sigma keeps the bound certified
        s.set_name("shifted-semicircle").set_support_bound(1 + 2 * root_upper(s2, 2));
        s.set_declared_mean(Rat(1));
        if (N >= 2) s.set_declared_variance(s2);
        return s;
      }
      case Kind::point_mass: {
        const Rat& c = params[0];
        std::vector<Rat> kappa(static_cast<std::size_t>(N), Rat(0));
        kappa[0] = c;
        MeasureSpec s = MeasureSpec::from_free_cumulants(std::move(kappa));
        s.set_name("point-mass").set_support_bound(c);
        s.set_declared_mean(c);
        if (N >= 2) s.set_declared_variance(Rat(0));
        return s;
      }
      case Kind::two_point: {
        const Rat &x1 = params[0], &x2 = params[1], &w1 = params[2], &w2 = params[3];
        std::vector<Rat> m;
        m.reserve(static_cast<std::size_t>(N));
        Rat p1 = 1, p2 = 1;
        for (int n = 1; n <= N; ++n) {
          p1 *= x1;
          p2 *= x2;
          m.push_back(w1 * p1 + w2 * p2);
        }
        MeasureSpec s = MeasureSpec::from_moments(std::move(m));
        s.set_name("two-point").set_support_bound(std::max(x1, x2)); // >= 1 since the mean is 1
        s.set_declared_mean(Rat(1));
        if (N >= 2) s.set_declared_variance(s.variance_value());
        return s;
      }
      case Kind::sakuma_h:
      case Kind::sakuma_s: {
        const Rat& s2 = params[0];
        std::vector<Rat> v;
        v.reserve(static_cast<std::size_t>(N));
        for (int n = 1; n <= N; ++n)
          v.push_back(pow_rat(s2 * n, n - 1) / Rat(factorial(n)));
        MeasureSpec s = kind == Kind::sakuma_h ? MeasureSpec::from_free_cumulants(std::move(v))
                                               : MeasureSpec::from_boolean_cumulants(std::move(v));
        s.set_name(kind == Kind::sakuma_h ? "sakuma-h" : "sakuma-s");
        s.set_declared_mean(Rat(1));
        if (N >= 2) s.set_declared_variance(s2);
        return s;
      }
    }
    throw std::logic_error("NamedLaw: bad kind");
  }
};

// kappa_n(m^{boxtimes k}) for the free Poisson m: the k-equal count.
inline Int free_poisson_power_cumulant(int k, int n) { return count_k_equal(k, n); }

// m_n(m^{boxtimes k}): the k-divisible count.
inline Int free_poisson_power_moment(int k, int n) { return count_k_divisible(k, n); }

// Exact support edge of m^{boxtimes k}: (k+1)^{k+1} / k^k.
inline Rat free_poisson_power_edge(int k) {
  if (k < 1) throw domain_error("free_poisson_power_edge: k must be positive");
  return Rat(pow_int(k + 1, static_cast<unsigned long>(k) + 1),
             pow_int(k, static_cast<unsigned long>(k)));
}

// kappa_n of the k-fold product of mean-1 semicirculars with variance
// sigma2: k ((k-1)n)! (sigma2)^{n-1} / ((n-1)! ((k-2)n+2)!), which is
// also count_nc21(k,n) * sigma2^{n-1}.
inline Rat wigner_product_cumulant(int k, int n, const Rat& sigma2) {
  if (k < 2) throw domain_error("wigner_product_cumulant: k must be at least 2");
  if (n < 1) throw domain_error("wigner_product_cumulant: n must be positive");
  if (sigma2 <= 0 || sigma2 > Rat(1, 4))
    throw domain_error("wigner_product_cumulant: need 0 < sigma^2 <= 1/4");
  Int num = Int(k) * factorial(static_cast<long>(k - 1) * n);
  Int den = factorial(n - 1) * factorial(static_cast<long>(k - 2) * n + 2);
  return Rat(num, den) * pow_rat(sigma2, n - 1);
}

// Table of kappa_1..kappa_n for mu^{boxtimes k}, k = 1..k_max, with the
// first k at which all of them are nonnegative (if any).
struct PositivityScan {
  std::optional<int> threshold;
  std::vector<std::vector<Rat>> cumulants; // [k-1] -> kappa_1..kappa_n
};

inline PositivityScan eventual_positivity_scan(const MeasureSpec& spec, int n, int k_max) {
  if (n < 1 || k_max < 1)
    throw domain_error("eventual_positivity_scan: n and k_max must be positive");
  if (!spec.support_bound())
    throw domain_error("eventual_positivity_scan: spec needs a declared support bound");
  if (spec.order() >= 2 && spec.variance_value() <= 0)
    throw domain_error("eventual_positivity_scan: variance must be positive");

  auto base = spec.free_cumulants(n).values;
  PositivityScan scan;
  std::vector<Rat> cur = base;
  for (int k = 1; k <= k_max; ++k) {
    bool nonneg = std::all_of(cur.begin(), cur.end(), [](const Rat& x) { return x >= 0; });
    if (nonneg && !scan.threshold) scan.threshold = k;
    scan.cumulants.push_back(cur);
    if (k < k_max) cur = detail::pair_convolution(cur, base, n);
  }
  return scan;
}

struct LimitCheck {
  Rat computed;
  Rat target;
};

struct LimitRow {
  int n = 0;
  long k = 0;
  Rat computed;
  Rat target;
};

// Scaled cumulants of D_{1/k}((mu^{boxtimes k})^{op k}) on a grid of k,
// where op is the additive convolution matching `flavor` (boxplus for
// free, uplus for Boolean). The additive power multiplies the n-th
// cumulant by k and the dilation by k^{-n}, so each entry is
// k^{1-n} c_n(mu^{boxtimes k}), compared against (sigma2 n)^{n-1} / n!.
inline std::vector<LimitRow> sakuma_limit_table(const MeasureSpec& spec, int n_max,
                                                std::vector<long> kgrid,
                                                Flavor flavor = Flavor::free) {
  if (n_max < 1) throw domain_error("sakuma_limit_table: n_max must be positive");
  if (kgrid.empty()) throw domain_error("sakuma_limit_table: empty k grid");
  for (long k : kgrid)
    if (k < 1) throw domain_error("sakuma_limit_table: k must be positive");
  if (spec.mean_value() != 1)
    throw domain_error("sakuma_limit_table: spec must have mean 1");
  if (!spec.support_bound())
    throw domain_error("sakuma_limit_table: spec needs a declared support bound");

  Rat sigma2 = spec.order() >= 2 ? spec.variance_value() : Rat(0);
  std::sort(kgrid.begin(), kgrid.end());
  kgrid.erase(std::unique(kgrid.begin(), kgrid.end()), kgrid.end());

  auto base = flavor == Flavor::free ? spec.free_cumulants(n_max).values
                                     : spec.boolean_cumulants(n_max).values;
  std::vector<LimitRow> rows;
  std::vector<Rat> cur = base;
  long k = 1;
  for (long kg : kgrid) {
    for (; k < kg; ++k) cur = detail::pair_convolution(cur, base, n_max);
    for (int n = 1; n <= n_max; ++n) {
      LimitRow row;
      row.n = n;
      row.k = kg;
      row.computed = pow_rat(Rat(kg), 1 - n) * cur[static_cast<std::size_t>(n) - 1];
      row.target = pow_rat(sigma2 * n, n - 1) / Rat(factorial(n));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

inline LimitCheck sakuma_limit_check(const MeasureSpec& spec, int n, long k) {
  auto rows = sakuma_limit_table(spec, n, {k}, Flavor::free);
  return {rows[static_cast<std::size_t>(n) - 1].computed,
          rows[static_cast<std::size_t>(n) - 1].target};
}

inline LimitCheck sakuma_boolean_limit_check(const MeasureSpec& spec, int n, long k) {
  auto rows = sakuma_limit_table(spec, n, {k}, Flavor::boolean);
  return {rows[static_cast<std::size_t>(n) - 1].computed,
          rows[static_cast<std::size_t>(n) - 1].target};
}

} // namespace ncfree
