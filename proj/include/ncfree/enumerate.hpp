#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncfree/errors.hpp"
#include "ncfree/partition.hpp"
#include "ncfree/rational.hpp"

namespace ncfree {

// Practical ceiling for full enumeration; |NC(16)| is already 3.6e7.
inline constexpr int kEnumerationCeiling = 16;

// Streams NC(n), or its k-equal / k-divisible subfamily, one partition
// per next() call. Single-consumer, stateful; create one per consumer.
//
// Order: ascending lexicographic in the word (l_1,...,l_n) where l_i is
// the index, by first appearance, of the block containing i. Every
// partition appears exactly once; the order is stable across runs.
//
// The walk is a depth-first search over left-to-right placements with a
// stack of open blocks. Position i either joins an open block (closing
// everything nested above it) or opens a new one. Family constraints
// prune: a closing block must have an admissible size, and the remaining
// positions must be able to complete all open blocks.
class NcEnumerator {
public:
  enum class Family { all, k_equal, k_divisible };

  explicit NcEnumerator(int n, Family family = Family::all, int k = 1,
                        int ceiling = kEnumerationCeiling)
      : n_(n), k_(k), family_(family) {
    if (n < 1) throw domain_error("NcEnumerator: n must be positive");
    if (k < 1) throw domain_error("NcEnumerator: k must be positive");
    if (family != Family::all && n % k != 0)
      throw domain_error("NcEnumerator: ground size " + std::to_string(n) +
                         " not divisible by k=" + std::to_string(k));
    if (n > ceiling)
      throw resource_limit_error("NcEnumerator: n=" + std::to_string(n) +
                                 " exceeds enumeration ceiling " + std::to_string(ceiling) +
                                 "; raise the ceiling explicitly if you accept the cost");
    frames_.reserve(static_cast<std::size_t>(n));
  }

  std::optional<NoncrossingPartition> next() {
    if (exhausted_) return std::nullopt;
    int pos, c;
    if (!started_) {
      started_ = true;
      pos = 0;
      c = 0;
    } else {
      c = frames_.back().choice + 1;
      undo();
      pos = n_ - 1;
    }
    for (;;) {
      if (pos == n_) return emit();
      if (try_from(pos, c)) {
        ++pos;
        c = 0;
      } else if (frames_.empty()) {
        exhausted_ = true;
        return std::nullopt;
      } else {
        c = frames_.back().choice + 1;
        undo();
        --pos;
      }
    }
  }

private:
  struct Frame {
    int choice = 0;              // < open-size at entry: join; == open-size: new block
    bool new_block = false;
    std::vector<int> popped;     // open indices closed by this join, in stack order
  };

  NoncrossingPartition emit() const { return NoncrossingPartition(n_, arena_); }

  bool closed_size_ok(std::size_t size) const {
    switch (family_) {
      case Family::all: return true;
      case Family::k_equal: return size == static_cast<std::size_t>(k_);
      case Family::k_divisible: return size % static_cast<std::size_t>(k_) == 0;
    }
    return true;
  }

  bool may_grow(std::size_t size) const {
    return family_ != Family::k_equal || size < static_cast<std::size_t>(k_);
  }

  // Necessary condition for the open blocks to be completable with the
  // elements not yet placed.
  bool feasible(int placed) const {
    if (family_ == Family::all) return true;
    long remaining = n_ - placed;
    long deficit = 0;
    for (int idx : open_) {
      auto size = static_cast<long>(arena_[idx].size());
      deficit += family_ == Family::k_equal ? k_ - size : (k_ - size % k_) % k_;
    }
    return remaining >= deficit && (remaining - deficit) % k_ == 0;
  }

  // Tries choices c, c+1, ... at position pos; on success the frame is
  // pushed and the element placed. Does not recurse past pos.
  bool try_from(int pos, int c) {
    int element = pos + 1;
    int width = static_cast<int>(open_.size());
    for (; c <= width; ++c) {
      if (c < width) {
        bool pops_ok = true;
        for (int d = c + 1; d < width && pops_ok; ++d)
          pops_ok = closed_size_ok(arena_[open_[d]].size());
        if (!pops_ok || !may_grow(arena_[open_[c]].size())) continue;
        Frame f;
        f.choice = c;
        f.popped.assign(open_.begin() + c + 1, open_.end());
        open_.resize(static_cast<std::size_t>(c) + 1);
        arena_[open_[c]].push_back(element);
        frames_.push_back(std::move(f));
      } else {
        arena_.push_back({element});
        open_.push_back(static_cast<int>(arena_.size()) - 1);
        frames_.push_back({c, true, {}});
      }
      if (feasible(pos + 1)) return true;
      undo();
    }
    return false;
  }

  void undo() {
    Frame f = std::move(frames_.back());
    frames_.pop_back();
    if (f.new_block) {
      arena_.pop_back();
      open_.pop_back();
    } else {
      arena_[open_[f.choice]].pop_back();
      open_.insert(open_.end(), f.popped.begin(), f.popped.end());
    }
  }

  int n_;
  int k_;
  Family family_;
  Blocks arena_;
  std::vector<int> open_;
  std::vector<Frame> frames_;
  bool started_ = false;
  bool exhausted_ = false;
};

inline NcEnumerator iter_nc(int n, int ceiling = kEnumerationCeiling) {
  return NcEnumerator(n, NcEnumerator::Family::all, 1, ceiling);
}

inline NcEnumerator iter_k_equal(int k, int n, int ceiling = kEnumerationCeiling) {
  return NcEnumerator(k * n, NcEnumerator::Family::k_equal, k, ceiling);
}

inline NcEnumerator iter_k_divisible(int k, int n, int ceiling = kEnumerationCeiling) {
  return NcEnumerator(k * n, NcEnumerator::Family::k_divisible, k, ceiling);
}

// k-equal partitions whose Kreweras complement has only singleton and
// pair blocks.
class Nc21Enumerator {
public:
  Nc21Enumerator(int k, int n, int ceiling = kEnumerationCeiling)
      : inner_(k * n, NcEnumerator::Family::k_equal, k, ceiling) {}

  std::optional<NoncrossingPartition> next() {
    while (auto p = inner_.next()) {
      const NoncrossingPartition kr = kreweras(*p);
      bool small = true;
      for (const auto& b : kr.blocks())
        if (b.size() > 2) {
          small = false;
          break;
        }
      if (small) return p;
    }
    return std::nullopt;
  }

private:
  NcEnumerator inner_;
};

inline Nc21Enumerator iter_nc21(int k, int n, int ceiling = kEnumerationCeiling) {
  return Nc21Enumerator(k, n, ceiling);
}

template <typename Enumerator, typename Fn>
void for_each(Enumerator&& e, Fn&& fn) {
  while (auto p = e.next()) fn(*p);
}

inline std::vector<NoncrossingPartition> all_noncrossing(int n, int ceiling = kEnumerationCeiling) {
  std::vector<NoncrossingPartition> out;
  auto e = iter_nc(n, ceiling);
  while (auto p = e.next()) out.push_back(std::move(*p));
  return out;
}

// ---- closed-form counters; every quotient's divisibility is asserted ----

inline Int count_catalan(int n) {
  if (n < 0) throw domain_error("count_catalan: negative n");
  return exact_div(binomial(2L * n, n), n + 1);
}

inline Int count_k_equal(int k, int n) {
  if (k < 1 || n < 1) throw domain_error("count_k_equal: parameters must be positive");
  return exact_div(binomial(static_cast<long>(k) * n, n), static_cast<long>(k - 1) * n + 1);
}

inline Int count_k_divisible(int k, int n) {
  if (k < 1 || n < 1) throw domain_error("count_k_divisible: parameters must be positive");
  return exact_div(binomial(static_cast<long>(k + 1) * n, n), static_cast<long>(k) * n + 1);
}

// k ((k-1)n)! / ((n(k-2)+2)! (n-1)!). For k = 1 the factorial argument
// n(k-2)+2 = 2-n goes negative from n = 3 on; there the value is defined
// by what is being counted, and the 1-equal family pins it down: the only
// 1-equal partition is the all-singleton one, whose complement is the
// one-block partition, so the count is 1 for n <= 2 and 0 afterwards.
inline Int count_nc21(int k, int n) {
  if (k < 1 || n < 1) throw domain_error("count_nc21: parameters must be positive");
  if (k == 1) return n <= 2 ? 1 : 0;
  long b1 = static_cast<long>(n) * (k - 2) + 2;
  Int num = Int(k) * factorial(static_cast<long>(k - 1) * n);
  return exact_div(num, factorial(b1) * factorial(n - 1));
}

// n! / ((n+1-Σr_i)! Π r_i!)
inline Int count_type(const TypeVector& t) {
  TypeVector v = TypeVector::validated(t.n, t.r); // rejects inconsistent input
  long blocks = v.block_count();
  Int denom = factorial(v.n + 1 - blocks);
  for (long ri : v.r) denom *= factorial(ri);
  return exact_div(factorial(v.n), denom);
}

// Number of partitions with type t whose Kreweras complement has type b:
// n (|pi|-1)! (|Kr|-1)! / (Π r_i! Π b_i!), and 0 whenever the block-count
// constraint |pi| + |Kr| = n+1 or the size sums fail.
inline Int count_pair_type(const TypeVector& t, const TypeVector& b) {
  TypeVector tv = TypeVector::validated(t.n, t.r);
  TypeVector bv = TypeVector::validated(b.n, b.r);
  if (tv.n != bv.n) return 0;
  long pb = tv.block_count(), kb = bv.block_count();
  if (pb + kb != tv.n + 1) return 0;
  Int denom = 1;
  for (long ri : tv.r) denom *= factorial(ri);
  for (long bi : bv.r) denom *= factorial(bi);
  Int num = Int(tv.n) * factorial(pb - 1) * factorial(kb - 1);
  return exact_div(num, denom);
}

inline Rat nc21_ratio(int k, int n) {
  return Rat(count_nc21(k, n), count_k_equal(k, n));
}

// Visits every TypeVector with weighted sum n (every multiset of block
// sizes), largest parts first.
template <typename Fn>
void for_each_type_vector(int n, Fn&& fn) {
  if (n < 1) throw domain_error("for_each_type_vector: n must be positive");
  std::vector<long> r(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int maxpart, int remaining) -> void {
    if (remaining == 0) {
      fn(TypeVector{n, r});
      return;
    }
    for (int i = std::min(maxpart, remaining); i >= 1; --i) {
      ++r[static_cast<std::size_t>(i) - 1];
      self(self, i, remaining - i);
      --r[static_cast<std::size_t>(i) - 1];
    }
  };
  rec(rec, n, n);
}

// One counting result with its parameters, as emitted by the CLI.
struct CountTable {
  std::string family;
  int n = 0;
  int k = 0;
  std::optional<TypeVector> type;
  std::optional<TypeVector> kr_type;
  Int count;
};

} // namespace ncfree
