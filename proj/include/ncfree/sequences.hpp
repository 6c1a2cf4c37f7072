#pragma once

#include <string>
#include <vector>

#include "ncfree/enumerate.hpp"
#include "ncfree/errors.hpp"
#include "ncfree/partition.hpp"
#include "ncfree/rational.hpp"

namespace ncfree {

enum class Flavor { free, boolean };

inline std::string flavor_name(Flavor f) { return f == Flavor::free ? "free" : "boolean"; }

namespace detail {

inline const Rat& seq_at(const std::vector<Rat>& v, int n, const char* what) {
  if (n < 1)
    throw domain_error(std::string(what) + ": index " + std::to_string(n) + " below 1");
  if (static_cast<std::size_t>(n) > v.size())
    throw truncation_error(std::string(what) + ": order " + std::to_string(n) +
                           " requested but sequence is truncated at " +
                           std::to_string(v.size()));
  return v[static_cast<std::size_t>(n) - 1];
}

} // namespace detail

// m_1..m_N, exact rationals; m_0 == 1 implicitly.
struct MomentSequence {
  std::vector<Rat> values;

  MomentSequence() = default;
  explicit MomentSequence(std::vector<Rat> v) : values(std::move(v)) {
    if (values.empty()) throw domain_error("MomentSequence: empty");
  }

  int order() const { return static_cast<int>(values.size()); }
  const Rat& at(int n) const { return detail::seq_at(values, n, "MomentSequence"); }

  friend bool operator==(const MomentSequence&, const MomentSequence&) = default;
};

// kappa_1..kappa_N (free) or b_1..b_N (Boolean); the flavor is part of
// the value and fixed at construction.
struct CumulantSequence {
  Flavor flavor = Flavor::free;
  std::vector<Rat> values;

  CumulantSequence() = default;
  CumulantSequence(Flavor f, std::vector<Rat> v) : flavor(f), values(std::move(v)) {
    if (values.empty()) throw domain_error("CumulantSequence: empty");
  }

  int order() const { return static_cast<int>(values.size()); }
  const Rat& at(int n) const { return detail::seq_at(values, n, "CumulantSequence"); }

  friend bool operator==(const CumulantSequence&, const CumulantSequence&) = default;
};

namespace detail {

// gap_products[s][t] = sum over s-tuples of gap sizes totalling t of the
// product of gap moments (m_0 = 1). Exactly the inner sums that appear
// when the moment-cumulant sum over NC(n) is grouped by the block
// containing 1.
inline std::vector<std::vector<Rat>> gap_products(const std::vector<Rat>& m, int smax, int tmax) {
  std::vector<std::vector<Rat>> B(static_cast<std::size_t>(smax) + 1,
                                  std::vector<Rat>(static_cast<std::size_t>(tmax) + 1, Rat(0)));
  B[0][0] = 1;
  for (int s = 1; s <= smax; ++s)
    for (int t = 0; t <= tmax; ++t) {
      Rat acc = B[s - 1][t]; // empty gap, m_0 = 1
      for (int g = 1; g <= t; ++g)
        acc += B[s - 1][t - g] * m[static_cast<std::size_t>(g) - 1];
      B[s][t] = acc;
    }
  return B;
}

} // namespace detail

// m_n = sum over NC(n) of the product of kappa_{|V|}, evaluated by the
// triangular recursion on the block containing 1.
inline MomentSequence moments_from_free_cumulants(const CumulantSequence& c) {
  if (c.flavor != Flavor::free)
    throw domain_error("moments_from_free_cumulants: sequence is not free-flavored");
  int N = c.order();
  std::vector<Rat> m;
  m.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    auto B = detail::gap_products(m, n, n - 1);
    Rat total = 0;
    for (int s = 1; s <= n; ++s) total += c.at(s) * B[s][n - s];
    m.push_back(total);
  }
  return MomentSequence(std::move(m));
}

// Inverse of the above: kappa_n = m_n minus the contribution of every
// partition except the one-block one.
inline CumulantSequence free_cumulants_from_moments(const MomentSequence& m) {
  int N = m.order();
  auto B = detail::gap_products(m.values, N, N);
  std::vector<Rat> kappa;
  kappa.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Rat acc = m.at(n);
    for (int s = 1; s < n; ++s) acc -= kappa[static_cast<std::size_t>(s) - 1] * B[s][n - s];
    kappa.push_back(acc);
  }
  return CumulantSequence(Flavor::free, std::move(kappa));
}

// Mob[p, 1_n]. The interval [p, 1_n] factors into full lattices NC(j),
// one per block of Kr(p), so the value is a product of signed Catalans.
inline Rat mobius_to_top(const NoncrossingPartition& p) {
  Int num = 1;
  int sign = 1;
  const NoncrossingPartition kr = kreweras(p);
  for (const auto& b : kr.blocks()) {
    auto j = static_cast<int>(b.size());
    num *= count_catalan(j - 1);
    if ((j - 1) % 2 != 0) sign = -sign;
  }
  return Rat(sign * num);
}

// Moebius-inversion route: kappa_n = sum over NC(n) of m_pi Mob[pi,1_n].
// Same map as free_cumulants_from_moments by a different path; kept as a
// cross-check surface. Enumerates NC(n), so desk-scale orders only.
inline CumulantSequence free_cumulants_via_mobius(const MomentSequence& m,
                                                  int ceiling = kEnumerationCeiling) {
  int N = m.order();
  std::vector<Rat> kappa;
  kappa.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Rat acc = 0;
    auto e = iter_nc(n, ceiling);
    while (auto p = e.next()) {
      Rat prod = mobius_to_top(*p);
      for (const auto& b : p->blocks()) prod *= m.at(static_cast<int>(b.size()));
      acc += prod;
    }
    kappa.push_back(acc);
  }
  return CumulantSequence(Flavor::free, std::move(kappa));
}

// Boolean cumulants: m_n = sum over interval partitions of the product
// of b_{|V|}, i.e. m_n = sum_s b_s m_{n-s}.
inline MomentSequence moments_from_boolean_cumulants(const CumulantSequence& b) {
  if (b.flavor != Flavor::boolean)
    throw domain_error("moments_from_boolean_cumulants: sequence is not boolean-flavored");
  int N = b.order();
  std::vector<Rat> m;
  m.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Rat acc = b.at(n); // the one-block interval partition
    for (int s = 1; s < n; ++s) acc += b.at(s) * m[static_cast<std::size_t>(n - s) - 1];
    m.push_back(acc);
  }
  return MomentSequence(std::move(m));
}

inline CumulantSequence boolean_cumulants_from_moments(const MomentSequence& m) {
  int N = m.order();
  std::vector<Rat> b;
  b.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    Rat acc = m.at(n);
    for (int s = 1; s < n; ++s) acc -= b[static_cast<std::size_t>(s) - 1] * m.at(n - s);
    b.push_back(acc);
  }
  return CumulantSequence(Flavor::boolean, std::move(b));
}

// A family of k variables, free from each other, each described by its
// cumulant sequence (all the same flavor and truncation order).
struct FreeFamily {
  Flavor flavor = Flavor::free;
  std::vector<std::vector<Rat>> cumulants; // [variable][order-1]

  FreeFamily(Flavor f, std::vector<std::vector<Rat>> c) : flavor(f), cumulants(std::move(c)) {
    if (cumulants.empty()) throw domain_error("FreeFamily: no variables");
    for (const auto& seq : cumulants)
      if (seq.size() != cumulants.front().size())
        throw domain_error("FreeFamily: sequences must share the truncation order");
  }

  int variables() const { return static_cast<int>(cumulants.size()); }
  int order() const { return static_cast<int>(cumulants.front().size()); }

  const Rat& cumulant(int variable, int n) const {
    if (variable < 1 || variable > variables())
      throw domain_error("FreeFamily: variable index out of range");
    return detail::seq_at(cumulants[static_cast<std::size_t>(variable) - 1], n, "FreeFamily");
  }
};

// kappa_pi with arguments chosen by `labels` (position -> variable
// index, 1-based). Freeness makes any block with mixed labels vanish.
inline Rat cumulant_on_partition(const FreeFamily& family, const NoncrossingPartition& p,
                                 const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != p.ground_size())
    throw domain_error("cumulant_on_partition: labels must cover the ground set");
  Rat prod = 1;
  for (const auto& b : p.blocks()) {
    int v = labels[static_cast<std::size_t>(b.front()) - 1];
    for (int e : b)
      if (labels[static_cast<std::size_t>(e) - 1] != v) return Rat(0);
    prod *= family.cumulant(v, static_cast<int>(b.size()));
    if (prod == 0) return prod;
  }
  return prod;
}

// Products-as-arguments: the |grouping|-th cumulant of the products
// formed along the interval blocks of `grouping`, as the sum of
// kappa_pi over partitions joining with the grouping to 1_n.
inline Rat products_as_arguments(const FreeFamily& family, const NoncrossingPartition& grouping,
                                 const std::vector<int>& labels,
                                 int ceiling = kEnumerationCeiling) {
  int n = grouping.ground_size();
  for (const auto& b : grouping.blocks())
    if (b.back() - b.front() + 1 != static_cast<int>(b.size()))
      throw domain_error("products_as_arguments: grouping must be an interval partition");
  Rat acc = 0;
  auto e = iter_nc(n, ceiling);
  while (auto p = e.next()) {
    if (join(*p, grouping).block_count() != 1) continue;
    acc += cumulant_on_partition(family, *p, labels);
  }
  return acc;
}

} // namespace ncfree
