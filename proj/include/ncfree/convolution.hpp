#pragma once

#include <string>
#include <vector>

#include "ncfree/enumerate.hpp"
#include "ncfree/errors.hpp"
#include "ncfree/measure.hpp"
#include "ncfree/partition.hpp"
#include "ncfree/rational.hpp"
#include "ncfree/sequences.hpp"

namespace ncfree {

enum class Strategy { direct, iterated };

inline Strategy strategy_from_name(const std::string& s) {
  if (s == "direct") return Strategy::direct;
  if (s == "iterated") return Strategy::iterated;
  throw parse_error("unknown strategy '" + s + "' (expected direct|iterated)");
}

// Default ground-set ceiling for the direct (k-equal enumeration) mode;
// beyond it callers are pointed at the iterated strategy.
inline constexpr int kDirectConvolutionCeiling = 12;

namespace detail {

// The two-variable convolution sum over NC(n), aggregated by the pair
// (type of pi, type of Kr(pi)) so only distinct block-size profiles are
// visited, each weighted by its exact partition count.
inline Rat pair_convolution_coefficient(int n, const std::vector<Rat>& xs,
                                        const std::vector<Rat>& ys) {
  Rat total = 0;
  for_each_type_vector(n, [&](const TypeVector& t) {
    Rat px = 1;
    for (int i = 1; i <= n; ++i)
      if (long m = t.r[static_cast<std::size_t>(i) - 1]; m > 0)
        px *= pow_rat(xs[static_cast<std::size_t>(i) - 1], m);
    if (px == 0) return;
    long tb = t.block_count();
    for_each_type_vector(n, [&](const TypeVector& b) {
      if (tb + b.block_count() != static_cast<long>(n) + 1) return;
      Int count = count_pair_type(t, b);
      if (count == 0) return;
      Rat py = 1;
      for (int i = 1; i <= n; ++i)
        if (long m = b.r[static_cast<std::size_t>(i) - 1]; m > 0)
          py *= pow_rat(ys[static_cast<std::size_t>(i) - 1], m);
      total += Rat(count) * px * py;
    });
  });
  return total;
}

inline std::vector<Rat> pair_convolution(const std::vector<Rat>& xs, const std::vector<Rat>& ys,
                                         int N) {
  std::vector<Rat> out;
  out.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) out.push_back(pair_convolution_coefficient(n, xs, ys));
  return out;
}

// Evaluates one summand of the Theorem-style k-fold sums: the product
// over variables j of the cumulants of mu_j along the blocks of the j-th
// piece of the Kreweras complement of pi.
inline Rat k_fold_summand(const NoncrossingPartition& pi, int k,
                          const std::vector<std::vector<Rat>>& cumulants) {
  Rat prod = 1;
  auto pieces = decompose_kreweras(pi, k);
  for (int j = 0; j < k && prod != 0; ++j)
    for (const auto& blk : pieces[static_cast<std::size_t>(j)].blocks()) {
      prod *= cumulants[static_cast<std::size_t>(j)][blk.size() - 1];
      if (prod == 0) break;
    }
  return prod;
}

inline std::vector<std::vector<Rat>> gather_cumulants(const std::vector<MeasureSpec>& specs,
                                                      int N, Flavor flavor) {
  std::vector<std::vector<Rat>> out;
  out.reserve(specs.size());
  for (const auto& s : specs)
    out.push_back(flavor == Flavor::free ? s.free_cumulants(N).values
                                         : s.boolean_cumulants(N).values);
  return out;
}

inline void check_direct_ceiling(int k, int N, int ceiling) {
  if (k * N > ceiling)
    throw resource_limit_error(
        "direct convolution needs k-equal partitions of [" + std::to_string(k * N) +
        "], past the ceiling " + std::to_string(ceiling) +
        "; use the iterated strategy or raise the ceiling explicitly");
}

} // namespace detail

// Free multiplicative convolution of two laws to order N, by the
// complementary-pair sum over NC(n).
inline MeasureSpec boxtimes_pair(const MeasureSpec& a, const MeasureSpec& b, int N) {
  auto xs = a.free_cumulants(N).values;
  auto ys = b.free_cumulants(N).values;
  return MeasureSpec::from_free_cumulants(detail::pair_convolution(xs, ys, N));
}

// k-fold free multiplicative convolution.
//
// direct:   kappa_n as the sum over k-equal partitions of [kn] of the
//           product of per-variable cumulants along the decomposed
//           Kreweras complement (cyclic variable labels).
// iterated: left fold of the two-variable sum.
// The two strategies agree exactly; keeping both is the point.
inline MeasureSpec boxtimes_k(const std::vector<MeasureSpec>& specs, int N, Strategy strategy,
                              int direct_ceiling = kDirectConvolutionCeiling) {
  if (specs.empty()) throw domain_error("boxtimes_k: no input measures");
  int k = static_cast<int>(specs.size());
  if (k == 1) return MeasureSpec::from_free_cumulants(specs[0].free_cumulants(N).values);

  if (strategy == Strategy::iterated) {
    MeasureSpec acc = MeasureSpec::from_free_cumulants(specs[0].free_cumulants(N).values);
    for (int i = 1; i < k; ++i) acc = boxtimes_pair(acc, specs[static_cast<std::size_t>(i)], N);
    return acc;
  }

  detail::check_direct_ceiling(k, N, direct_ceiling);
  auto cums = detail::gather_cumulants(specs, N, Flavor::free);
  std::vector<Rat> kappa;
  kappa.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Rat acc = 0;
    auto e = iter_k_equal(k, n, direct_ceiling);
    while (auto pi = e.next()) acc += detail::k_fold_summand(*pi, k, cums);
    kappa.push_back(acc);
  }
  return MeasureSpec::from_free_cumulants(std::move(kappa));
}

// The companion moment formula: m_n as the same sum taken over
// k-divisible partitions of [kn]. Exposed for cross-checking against
// the transform of the cumulant output.
inline MomentSequence boxtimes_k_direct_moments(const std::vector<MeasureSpec>& specs, int N,
                                                int direct_ceiling = kDirectConvolutionCeiling) {
  if (specs.empty()) throw domain_error("boxtimes_k_direct_moments: no input measures");
  int k = static_cast<int>(specs.size());
  detail::check_direct_ceiling(k, N, direct_ceiling);
  auto cums = detail::gather_cumulants(specs, N, Flavor::free);
  std::vector<Rat> m;
  m.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Rat acc = 0;
    auto e = iter_k_divisible(k, n, direct_ceiling);
    while (auto pi = e.next()) acc += detail::k_fold_summand(*pi, k, cums);
    m.push_back(acc);
  }
  return MomentSequence(std::move(m));
}

// Boolean-cumulant variant of the k-fold product: the same partition
// sums with Boolean cumulants in the multiplicative functional.
inline CumulantSequence boxtimes_k_boolean(const std::vector<MeasureSpec>& specs, int N,
                                           Strategy strategy = Strategy::direct,
                                           int direct_ceiling = kDirectConvolutionCeiling) {
  if (specs.empty()) throw domain_error("boxtimes_k_boolean: no input measures");
  int k = static_cast<int>(specs.size());
  if (k == 1) return specs[0].boolean_cumulants(N);

  if (strategy == Strategy::iterated) {
    std::vector<Rat> acc = specs[0].boolean_cumulants(N).values;
    for (int i = 1; i < k; ++i)
      acc = detail::pair_convolution(acc, specs[static_cast<std::size_t>(i)].boolean_cumulants(N).values, N);
    return CumulantSequence(Flavor::boolean, std::move(acc));
  }

  detail::check_direct_ceiling(k, N, direct_ceiling);
  auto cums = detail::gather_cumulants(specs, N, Flavor::boolean);
  std::vector<Rat> b;
  b.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Rat acc = 0;
    auto e = iter_k_equal(k, n, direct_ceiling);
    while (auto pi = e.next()) acc += detail::k_fold_summand(*pi, k, cums);
    b.push_back(acc);
  }
  return CumulantSequence(Flavor::boolean, std::move(b));
}

// Free additive convolution: cumulants add.
inline MeasureSpec boxplus_k(const std::vector<MeasureSpec>& specs, int N) {
  if (specs.empty()) throw domain_error("boxplus_k: no input measures");
  std::vector<Rat> kappa(static_cast<std::size_t>(N), Rat(0));
  for (const auto& s : specs) {
    auto c = s.free_cumulants(N);
    for (int n = 1; n <= N; ++n) kappa[static_cast<std::size_t>(n) - 1] += c.at(n);
  }
  return MeasureSpec::from_free_cumulants(std::move(kappa));
}

// Boolean additive convolution: Boolean cumulants add.
inline MeasureSpec uplus_k(const std::vector<MeasureSpec>& specs, int N) {
  if (specs.empty()) throw domain_error("uplus_k: no input measures");
  std::vector<Rat> b(static_cast<std::size_t>(N), Rat(0));
  for (const auto& s : specs) {
    auto c = s.boolean_cumulants(N);
    for (int n = 1; n <= N; ++n) b[static_cast<std::size_t>(n) - 1] += c.at(n);
  }
  return MeasureSpec::from_boolean_cumulants(std::move(b));
}

// Dilation by c > 0: every n-th entry picks up c^n, whichever of the
// three sequence kinds is stored. Declared metadata scales along.
inline MeasureSpec dilate(const MeasureSpec& spec, const Rat& c, int N) {
  if (c <= 0) throw domain_error("dilate: scale must be positive");
  if (N > spec.order())
    throw truncation_error("dilate: order " + std::to_string(N) + " exceeds spec order " +
                           std::to_string(spec.order()));
  std::vector<Rat> values;
  values.reserve(static_cast<std::size_t>(N));
  Rat power = 1;
  for (int n = 1; n <= N; ++n) {
    power *= c;
    values.push_back(spec.raw_values()[static_cast<std::size_t>(n) - 1] * power);
  }
  MeasureSpec out(spec.kind(), std::move(values));
  if (!spec.name().empty()) out.set_name(spec.name());
  if (spec.support_bound()) out.set_support_bound(*spec.support_bound() * c);
  if (spec.declared_mean()) out.set_declared_mean(*spec.declared_mean() * c);
  if (spec.declared_variance()) out.set_declared_variance(*spec.declared_variance() * c * c);
  return out;
}

} // namespace ncfree
