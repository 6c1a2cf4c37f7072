#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ncfree/errors.hpp"

namespace ncfree {

using Blocks = std::vector<std::vector<int>>;

// Multiplicities (r_1,...,r_n) of block sizes; r[i-1] blocks of size i.
struct TypeVector {
  int n = 0;
  std::vector<long> r;

  static TypeVector validated(int n, std::vector<long> r) {
    if (n < 1) throw domain_error("TypeVector: n must be positive");
    for (std::size_t i = static_cast<std::size_t>(n); i < r.size(); ++i)
      if (r[i] != 0)
        throw domain_error("TypeVector: multiplicity for block size " + std::to_string(i + 1) +
                           " cannot be nonzero when n=" + std::to_string(n));
    r.resize(static_cast<std::size_t>(n), 0);
    long weighted = 0;
    for (int i = 1; i <= n; ++i) {
      if (r[i - 1] < 0) throw domain_error("TypeVector: negative multiplicity");
      weighted += static_cast<long>(i) * r[i - 1];
    }
    if (weighted != n)
      throw domain_error("TypeVector: sum of i*r_i is " + std::to_string(weighted) +
                         ", expected " + std::to_string(n));
    return TypeVector{n, std::move(r)};
  }

  long block_count() const { return std::accumulate(r.begin(), r.end(), 0L); }

  friend bool operator==(const TypeVector&, const TypeVector&) = default;
  friend auto operator<=>(const TypeVector&, const TypeVector&) = default;
};

namespace detail {

// element -> 0-based index of its block; blocks must cover {1..n} exactly.
inline std::vector<int> element_labels(int n, const Blocks& blocks) {
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw structural_error("empty block");
    for (int e : blocks[b]) {
      if (e < 1 || e > n)
        throw structural_error("element " + std::to_string(e) + " outside 1.." +
                               std::to_string(n));
      if (label[e - 1] != -1)
        throw structural_error("element " + std::to_string(e) + " appears twice");
      label[e - 1] = static_cast<int>(b);
    }
  }
  for (int e = 1; e <= n; ++e)
    if (label[e - 1] == -1)
      throw structural_error("element " + std::to_string(e) + " missing");
  return label;
}

// One left-to-right sweep with a stack of open blocks: a partition is
// non-crossing iff a revisited block is always the innermost open one.
inline bool noncrossing_labels(int n, const std::vector<int>& label, std::size_t num_blocks) {
  std::vector<int> first(num_blocks, -1), last(num_blocks, -1);
  for (int i = 0; i < n; ++i) {
    if (first[label[i]] < 0) first[label[i]] = i;
    last[label[i]] = i;
  }
  std::vector<int> open;
  for (int i = 0; i < n; ++i) {
    int b = label[i];
    if (first[b] == i)
      open.push_back(b);
    else if (open.empty() || open.back() != b)
      return false;
    if (last[b] == i) open.pop_back();
  }
  return true;
}

} // namespace detail

inline void check_set_partition(int n, const Blocks& blocks) {
  if (n < 1) throw structural_error("ground set must be nonempty");
  detail::element_labels(n, blocks);
}

// True iff no 4-tuple a<b<c<d has a,c and b,d in two different blocks.
// Throws structural_error if `blocks` is not a set partition of [n].
inline bool is_noncrossing(int n, const Blocks& blocks) {
  auto label = detail::element_labels(n, blocks);
  return detail::noncrossing_labels(n, label, blocks.size());
}

// A non-crossing partition of {1..n} in canonical form: every block
// sorted ascending, blocks ordered by their minima. Equality is
// structural. Values are immutable after construction.
class NoncrossingPartition {
public:
  NoncrossingPartition(int n, Blocks blocks) : n_(n), blocks_(std::move(blocks)) {
    for (auto& b : blocks_) {
      if (b.empty()) throw structural_error("empty block");
      std::sort(b.begin(), b.end());
    }
    std::sort(blocks_.begin(), blocks_.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    auto label = detail::element_labels(n_, blocks_);
    if (!detail::noncrossing_labels(n_, label, blocks_.size()))
      throw structural_error("partition has a crossing");
  }

  // 0_n
  static NoncrossingPartition singletons(int n) {
    Blocks b;
    b.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) b.push_back({i});
    return NoncrossingPartition(n, std::move(b));
  }

  // 1_n
  static NoncrossingPartition full(int n) {
    std::vector<int> all(static_cast<std::size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    return NoncrossingPartition(n, {std::move(all)});
  }

  // Parses the text format `{1,8,12}{2,6,7}...`; whitespace between
  // tokens is tolerated, emission never produces any.
  static NoncrossingPartition parse(std::string_view text);

  int ground_size() const { return n_; }
  const Blocks& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }

  std::vector<int> block_labels() const { return detail::element_labels(n_, blocks_); }

  std::string to_text() const {
    std::string out;
    for (const auto& b : blocks_) {
      out += '{';
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(b[i]);
      }
      out += '}';
    }
    return out;
  }

  friend bool operator==(const NoncrossingPartition& a, const NoncrossingPartition& b) {
    return a.n_ == b.n_ && a.blocks_ == b.blocks_;
  }
  // Lexicographic on the canonical block list; the library's documented
  // enumeration order agrees with ordering by block-label words, not this.
  friend bool operator<(const NoncrossingPartition& a, const NoncrossingPartition& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.blocks_ < b.blocks_;
  }

  friend std::ostream& operator<<(std::ostream& os, const NoncrossingPartition& p) {
    return os << p.to_text();
  }

private:
  int n_;
  Blocks blocks_;
};

inline NoncrossingPartition NoncrossingPartition::parse(std::string_view text) {
  Blocks blocks;
  std::size_t i = 0;
  int count = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
  };
  auto read_int = [&]() -> int {
    std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
    if (i == start) throw parse_error("expected integer at offset " + std::to_string(start));
    return std::stoi(std::string(text.substr(start, i - start)));
  };
  skip_ws();
  if (i >= text.size()) throw parse_error("empty partition literal");
  while (i < text.size()) {
    if (text[i] != '{') throw parse_error("expected '{' at offset " + std::to_string(i));
    ++i;
    std::vector<int> block;
    for (;;) {
      skip_ws();
      block.push_back(read_int());
      ++count;
      skip_ws();
      if (i >= text.size()) throw parse_error("unterminated block");
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == '}') {
        ++i;
        break;
      }
      throw parse_error("expected ',' or '}' at offset " + std::to_string(i));
    }
    blocks.push_back(std::move(block));
    skip_ws();
  }
  return NoncrossingPartition(count, std::move(blocks));
}

// Kreweras complement: the maximal partition of the even interleaved
// points {2,4,...,2n} whose union with p (on the odd points) stays
// non-crossing, relabeled back to [n]. Computed through the standard
// permutation correspondence: with alpha(p) sending each element to the
// next one in its block (cyclically), alpha(Kr(p)) = alpha(p)^-1 * cycle.
inline NoncrossingPartition kreweras(const NoncrossingPartition& p) {
  int n = p.ground_size();
  std::vector<int> next(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& b : p.blocks()) {
    for (std::size_t j = 0; j + 1 < b.size(); ++j) next[b[j]] = b[j + 1];
    next[b.back()] = b.front();
  }
  std::vector<int> prev(static_cast<std::size_t>(n) + 1, 0);
  for (int i = 1; i <= n; ++i) prev[next[i]] = i;

  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  Blocks out;
  for (int i = 1; i <= n; ++i) {
    if (seen[i]) continue;
    std::vector<int> cycle;
    int j = i;
    while (!seen[j]) {
      seen[j] = 1;
      cycle.push_back(j);
      j = prev[j % n + 1];
    }
    out.push_back(std::move(cycle));
  }
  return NoncrossingPartition(n, std::move(out));
}

// Reverse refinement: every block of p contained in a block of q.
inline bool leq(const NoncrossingPartition& p, const NoncrossingPartition& q) {
  if (p.ground_size() != q.ground_size())
    throw structural_error("leq: ground sets differ");
  auto qlabel = q.block_labels();
  for (const auto& b : p.blocks()) {
    int l = qlabel[b.front() - 1];
    for (int e : b)
      if (qlabel[e - 1] != l) return false;
  }
  return true;
}

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Two sorted element lists cross iff their merged block-tag word, with
// runs compressed, alternates at least four times (pattern ABAB).
inline bool blocks_cross(const std::vector<int>& a, const std::vector<int>& b) {
  std::size_t i = 0, j = 0;
  int alternations = 0, last_tag = -1;
  while (i < a.size() || j < b.size()) {
    int tag;
    if (j == b.size() || (i < a.size() && a[i] < b[j])) {
      tag = 0;
      ++i;
    } else {
      tag = 1;
      ++j;
    }
    if (tag != last_tag) {
      ++alternations;
      last_tag = tag;
    }
  }
  return alternations >= 4;
}

} // namespace detail

// Least upper bound in the NC(n) lattice: the full-lattice join of the
// blocks, then crossing pairs merged until none remain. Can be coarser
// than the join in the full partition lattice.
inline NoncrossingPartition join(const NoncrossingPartition& p, const NoncrossingPartition& q) {
  int n = p.ground_size();
  if (n != q.ground_size()) throw structural_error("join: ground sets differ");
  detail::UnionFind uf(n);
  for (const auto& b : p.blocks())
    for (std::size_t i = 1; i < b.size(); ++i) uf.unite(b[0] - 1, b[i] - 1);
  for (const auto& b : q.blocks())
    for (std::size_t i = 1; i < b.size(); ++i) uf.unite(b[0] - 1, b[i] - 1);

  for (;;) {
    std::vector<std::vector<int>> groups(static_cast<std::size_t>(n));
    for (int e = 1; e <= n; ++e) groups[uf.find(e - 1)].push_back(e);
    Blocks blocks;
    for (auto& g : groups)
      if (!g.empty()) blocks.push_back(std::move(g));

    bool merged = false;
    for (std::size_t i = 0; i < blocks.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < blocks.size() && !merged; ++j)
        if (detail::blocks_cross(blocks[i], blocks[j])) {
          uf.unite(blocks[i][0] - 1, blocks[j][0] - 1);
          merged = true;
        }
    if (!merged) return NoncrossingPartition(n, std::move(blocks));
  }
}

// rho(k,n): n consecutive interval blocks of size k on [kn].
inline NoncrossingPartition rho(int k, int n) {
  if (k < 1 || n < 1) throw domain_error("rho: k and n must be positive");
  Blocks blocks;
  blocks.reserve(static_cast<std::size_t>(n));
  for (int b = 0; b < n; ++b) {
    std::vector<int> blk(static_cast<std::size_t>(k));
    std::iota(blk.begin(), blk.end(), b * k + 1);
    blocks.push_back(std::move(blk));
  }
  return NoncrossingPartition(k * n, std::move(blocks));
}

// Relabels i -> i+shift (mod n, 1-based). rotate(p,-1) composed with
// itself inverts the double Kreweras complement.
inline NoncrossingPartition rotate(const NoncrossingPartition& p, int shift) {
  int n = p.ground_size();
  int s = ((shift % n) + n) % n;
  Blocks blocks = p.blocks();
  for (auto& b : blocks)
    for (int& e : b) e = (e - 1 + s) % n + 1;
  return NoncrossingPartition(n, std::move(blocks));
}

namespace detail {

inline int checked_congruence_modulus(const NoncrossingPartition& p, int k, const char* op) {
  if (k < 1) throw domain_error(std::string(op) + ": k must be positive");
  if (p.ground_size() % k != 0)
    throw domain_error(std::string(op) + ": ground size " + std::to_string(p.ground_size()) +
                       " not divisible by k=" + std::to_string(k));
  return p.ground_size() / k;
}

} // namespace detail

inline bool is_k_divisible(const NoncrossingPartition& p, int k) {
  detail::checked_congruence_modulus(p, k, "is_k_divisible");
  for (const auto& b : p.blocks())
    if (b.size() % static_cast<std::size_t>(k) != 0) return false;
  return true;
}

inline bool is_k_equal(const NoncrossingPartition& p, int k) {
  detail::checked_congruence_modulus(p, k, "is_k_equal");
  for (const auto& b : p.blocks())
    if (b.size() != static_cast<std::size_t>(k)) return false;
  return true;
}

// All elements of every block share one congruence class mod k.
inline bool is_k_preserving(const NoncrossingPartition& p, int k) {
  detail::checked_congruence_modulus(p, k, "is_k_preserving");
  for (const auto& b : p.blocks()) {
    int res = b.front() % k;
    for (int e : b)
      if (e % k != res) return false;
  }
  return true;
}

// k-preserving and joining with rho(k,n) to the one-block partition.
inline bool is_k_completing(const NoncrossingPartition& p, int k) {
  int n = detail::checked_congruence_modulus(p, k, "is_k_completing");
  if (!is_k_preserving(p, k)) return false;
  return join(p, rho(k, n)).block_count() == 1;
}

// For k-divisible p on [kn], splits Kr(p) by congruence class mod k into
// k partitions, each relabeled order-isomorphically onto [n]. Class j
// collects the elements congruent to j (with k standing for 0).
inline std::vector<NoncrossingPartition> decompose_kreweras(const NoncrossingPartition& p, int k) {
  int n = detail::checked_congruence_modulus(p, k, "decompose_kreweras");
  if (!is_k_divisible(p, k))
    throw domain_error("decompose_kreweras: partition is not k-divisible");
  NoncrossingPartition kr = kreweras(p);

  std::vector<Blocks> classes(static_cast<std::size_t>(k));
  for (const auto& b : kr.blocks()) {
    int cls = (b.front() - 1) % k; // 0-based class index
    std::vector<int> relabeled;
    relabeled.reserve(b.size());
    for (int e : b) {
      if ((e - 1) % k != cls)
        throw std::logic_error("decompose_kreweras: complement block spans classes");
      relabeled.push_back((e - 1) / k + 1);
    }
    classes[cls].push_back(std::move(relabeled));
  }

  std::vector<NoncrossingPartition> parts;
  parts.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j)
    parts.emplace_back(n, std::move(classes[j]));
  return parts;
}

// Duplication insertion: copies the element at position r, places the
// copy at r+k joined to r's block, and fills r+1..r+k-1 with singletons.
inline NoncrossingPartition insert_dup(const NoncrossingPartition& p, int r, int k) {
  int n = p.ground_size();
  if (r < 1 || r > n) throw domain_error("insert_dup: position out of range");
  if (k < 1) throw domain_error("insert_dup: gap size must be positive");
  Blocks blocks;
  blocks.reserve(p.block_count() + static_cast<std::size_t>(k) - 1);
  for (const auto& b : p.blocks()) {
    std::vector<int> nb;
    nb.reserve(b.size() + 1);
    bool holds_r = false;
    for (int e : b) {
      nb.push_back(e <= r ? e : e + k);
      if (e == r) holds_r = true;
    }
    if (holds_r) nb.push_back(r + k);
    blocks.push_back(std::move(nb));
  }
  for (int s = r + 1; s < r + k; ++s) blocks.push_back({s});
  return NoncrossingPartition(n + k, std::move(blocks));
}

// Interval insertion: a fresh block {r,...,r+k-1} between old positions
// r-1 and r; old elements >= r shift up by k.
inline NoncrossingPartition insert_interval(const NoncrossingPartition& p, int r, int k) {
  int n = p.ground_size();
  if (r < 1 || r > n + 1) throw domain_error("insert_interval: position out of range");
  if (k < 1) throw domain_error("insert_interval: block size must be positive");
  Blocks blocks;
  blocks.reserve(p.block_count() + 1);
  for (const auto& b : p.blocks()) {
    std::vector<int> nb;
    nb.reserve(b.size());
    for (int e : b) nb.push_back(e < r ? e : e + k);
    blocks.push_back(std::move(nb));
  }
  std::vector<int> interval(static_cast<std::size_t>(k));
  std::iota(interval.begin(), interval.end(), r);
  blocks.push_back(std::move(interval));
  return NoncrossingPartition(n + k, std::move(blocks));
}

// One duplication step: insert_dup at `position` with gap `multiple`*k.
struct InsertionStep {
  int position = 0;
  int multiple = 0;

  friend bool operator==(const InsertionStep&, const InsertionStep&) = default;
};

// Result of factor_k_preserving: replaying the steps (in order) on the
// all-singleton partition of [base_size] reconstructs the input.
struct Factorization {
  int base_size = 0;
  std::vector<InsertionStep> steps;
};

inline NoncrossingPartition replay_insertions(const Factorization& f, int k) {
  NoncrossingPartition cur = NoncrossingPartition::singletons(f.base_size);
  for (const auto& step : f.steps) cur = insert_dup(cur, step.position, step.multiple * k);
  return cur;
}

// Greedy peel: find the smallest r (then smallest s) with r ~ r+sk and
// only singletons strictly between, strip that duplication, recurse.
// Deterministic by the fixed tie-break.
inline Factorization factor_k_preserving(const NoncrossingPartition& p, int k) {
  detail::checked_congruence_modulus(p, k, "factor_k_preserving");
  if (!is_k_preserving(p, k))
    throw domain_error("factor_k_preserving: partition is not k-preserving");

  Blocks cur = p.blocks();
  int m = p.ground_size();
  std::vector<InsertionStep> peeled;

  for (;;) {
    auto label = detail::element_labels(m, cur);
    std::vector<int> block_size(cur.size());
    for (std::size_t b = 0; b < cur.size(); ++b)
      block_size[b] = static_cast<int>(cur[b].size());

    int found_r = 0, found_s = 0;
    for (int r = 1; r <= m - k && !found_r; ++r) {
      for (int s = 1; r + s * k <= m; ++s) {
        if (label[r - 1] != label[r + s * k - 1]) continue;
        bool singles = true;
        for (int t = r + 1; t < r + s * k && singles; ++t)
          singles = block_size[label[t - 1]] == 1;
        if (singles) {
          found_r = r;
          found_s = s;
          break;
        }
      }
    }
    if (!found_r) {
      for (int sz : block_size)
        if (sz != 1) throw std::logic_error("factor_k_preserving: greedy peel stuck");
      break;
    }

    int gap = found_s * k;
    Blocks next;
    next.reserve(cur.size());
    for (const auto& b : cur) {
      std::vector<int> nb;
      for (int e : b) {
        if (e <= found_r)
          nb.push_back(e);
        else if (e > found_r + gap)
          nb.push_back(e - gap);
        else if (e != found_r + gap && b.size() != 1)
          throw std::logic_error("factor_k_preserving: non-singleton inside gap");
        // elements in (r, r+gap] vanish: the duplicate and its singletons
      }
      if (!nb.empty()) next.push_back(std::move(nb));
    }
    cur = std::move(next);
    m -= gap;
    peeled.push_back({found_r, found_s});
  }

  Factorization f;
  f.base_size = m;
  f.steps.assign(peeled.rbegin(), peeled.rend());
  return f;
}

inline TypeVector block_type(const NoncrossingPartition& p) {
  std::vector<long> r(static_cast<std::size_t>(p.ground_size()), 0);
  for (const auto& b : p.blocks()) ++r[b.size() - 1];
  return TypeVector{p.ground_size(), std::move(r)};
}

} // namespace ncfree
