#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>

#include "ncfree/enumerate.hpp"
#include "oracles.hpp"

using namespace ncfree;

namespace {

std::vector<NoncrossingPartition> drain(NcEnumerator e) {
  std::vector<NoncrossingPartition> out;
  while (auto p = e.next()) out.push_back(std::move(*p));
  return out;
}

TypeVector one_block_type(int n) {
  std::vector<long> r(static_cast<std::size_t>(n), 0);
  r[static_cast<std::size_t>(n) - 1] = 1;
  return TypeVector::validated(n, std::move(r));
}

TypeVector all_singleton_type(int n) {
  std::vector<long> r(static_cast<std::size_t>(n), 0);
  r[0] = n;
  return TypeVector::validated(n, std::move(r));
}

} // namespace

TEST_CASE("iter_nc counts and membership") {
  for (int n = 1; n <= 8; ++n) {
    auto got = drain(iter_nc(n));
    CHECK(Int(got.size()) == count_catalan(n));
    std::set<NoncrossingPartition> unique(got.begin(), got.end());
    CHECK(unique.size() == got.size());
  }
  auto one = drain(iter_nc(1));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == NoncrossingPartition::full(1));

  // n=4 equals the filter of all 15 set partitions
  auto filtered = oracle::all_noncrossing_by_filter(4);
  auto produced = drain(iter_nc(4));
  std::sort(filtered.begin(), filtered.end());
  std::sort(produced.begin(), produced.end());
  CHECK(filtered == produced);
  CHECK(oracle::all_set_partitions(4).size() == 15);
}

TEST_CASE("documented enumeration order") {
  auto got = drain(iter_nc(3));
  REQUIRE(got.size() == 5);
  CHECK(got[0].to_text() == "{1,2,3}");
  CHECK(got[1].to_text() == "{1,2}{3}");
  CHECK(got[2].to_text() == "{1,3}{2}");
  CHECK(got[3].to_text() == "{1}{2,3}");
  CHECK(got[4].to_text() == "{1}{2}{3}");

  // strictly ascending in the block-label word across the whole family
  auto all6 = drain(iter_nc(6));
  for (std::size_t i = 1; i < all6.size(); ++i)
    CHECK(all6[i - 1].block_labels() < all6[i].block_labels());
}

TEST_CASE("family streams agree with predicate filters") {
  for (int k = 1; k <= 5; ++k)
    for (int n = 1; k * n <= 10; ++n) {
      auto equal = drain(iter_k_equal(k, n));
      auto divisible = drain(iter_k_divisible(k, n));
      std::vector<NoncrossingPartition> want_equal, want_divisible;
      auto e = iter_nc(k * n);
      while (auto p = e.next()) {
        if (is_k_equal(*p, k)) want_equal.push_back(*p);
        if (is_k_divisible(*p, k)) want_divisible.push_back(*p);
      }
      CHECK(equal == want_equal);
      CHECK(divisible == want_divisible);
      CHECK(Int(equal.size()) == count_k_equal(k, n));
      CHECK(Int(divisible.size()) == count_k_divisible(k, n));
    }

  auto pairings = drain(iter_k_equal(2, 3));
  CHECK(pairings.size() == 5);
  for (int k = 1; k <= 5; ++k) {
    auto single = drain(iter_k_equal(k, 1));
    REQUIRE(single.size() == 1);
    CHECK(single[0] == NoncrossingPartition::full(k));
  }
}

TEST_CASE("nc21 stream") {
  for (int k = 1; k <= 5; ++k)
    for (int n = 1; k * n <= 10; ++n) {
      long count = 0;
      auto e = iter_nc21(k, n);
      while (auto p = e.next()) {
        ++count;
        auto t = block_type(kreweras(*p));
        // the complement type is forced
        CHECK(t.r[0] == static_cast<long>(n) * (k - 2) + 2);
        if (k * n >= 2) CHECK(t.r[1] == n - 1);
        for (int i = 3; i <= k * n; ++i) CHECK(t.r[static_cast<std::size_t>(i) - 1] == 0);
      }
      CHECK(Int(count) == count_nc21(k, n));
    }
}

TEST_CASE("ceilings and domain errors") {
  CHECK_THROWS_AS(iter_nc(17), resource_limit_error);
  CHECK_THROWS_AS(iter_nc(15, 14), resource_limit_error);
  CHECK_NOTHROW(iter_nc(15));
  CHECK_THROWS_AS(iter_nc(0), domain_error);
  CHECK_THROWS_AS(iter_k_equal(2, 0), domain_error);
  CHECK_THROWS_AS(NcEnumerator(5, NcEnumerator::Family::k_equal, 2), domain_error);
}

TEST_CASE("closed-form counters") {
  SECTION("catalan") {
    CHECK(count_catalan(3) == 5);
    CHECK(count_catalan(0) == 1);
    CHECK(count_catalan(12) == 208012);
  }
  SECTION("k-equal and k-divisible") {
    CHECK(count_k_divisible(2, 2) == 3);
    CHECK(count_k_equal(3, 4) == 55);
    CHECK(count_k_equal(1, 7) == 1);
    CHECK(count_k_divisible(1, 7) == count_catalan(7));
    CHECK_THROWS_AS(count_k_equal(0, 3), domain_error);
  }
  SECTION("nc21 closed form and edge cases") {
    CHECK(count_nc21(2, 2) == 2);
    CHECK(count_nc21(2, 5) == 5); // reduces to n for pairings
    CHECK(count_nc21(1, 1) == 1);
    CHECK(count_nc21(1, 2) == 1);
    CHECK(count_nc21(1, 3) == 0); // negative factorial argument regime
    CHECK(count_nc21(1, 6) == 0);
    for (int n = 1; n <= 5; ++n) { // enumeration semantics where the formula misbehaves
      long c = 0;
      auto e = iter_nc21(1, n);
      while (e.next()) ++c;
      CHECK(Int(c) == count_nc21(1, n));
    }
  }
}

TEST_CASE("count_type") {
  CHECK(count_type(TypeVector::validated(4, {0, 2})) == 2);
  for (int n = 1; n <= 7; ++n) {
    CHECK(count_type(one_block_type(n)) == 1);
    CHECK(count_type(all_singleton_type(n)) == 1);
  }
  SECTION("matches exhaustive grouping") {
    for (int n = 1; n <= 7; ++n) {
      std::map<TypeVector, long> grouped;
      auto e = iter_nc(n);
      while (auto p = e.next()) ++grouped[block_type(*p)];
      Int total = 0;
      for_each_type_vector(n, [&](const TypeVector& t) {
        Int formula = count_type(t);
        total += formula;
        auto it = grouped.find(t);
        CHECK(formula == Int(it == grouped.end() ? 0 : it->second));
      });
      CHECK(total == count_catalan(n));
    }
  }
  SECTION("sum over all types reaches catalan through n=10") {
    for (int n = 8; n <= 10; ++n) {
      Int total = 0;
      for_each_type_vector(n, [&](const TypeVector& t) { total += count_type(t); });
      CHECK(total == count_catalan(n));
    }
  }
  CHECK_THROWS_AS(count_type(TypeVector{4, {1, 2, 0, 0}}), domain_error);
}

TEST_CASE("count_pair_type") {
  SECTION("matches exhaustive grouping for n <= 7") {
    for (int n = 1; n <= 7; ++n) {
      std::map<std::pair<TypeVector, TypeVector>, long> grouped;
      auto e = iter_nc(n);
      while (auto p = e.next()) ++grouped[{block_type(*p), block_type(kreweras(*p))}];
      for_each_type_vector(n, [&](const TypeVector& t) {
        for_each_type_vector(n, [&](const TypeVector& b) {
          auto it = grouped.find({t, b});
          CHECK(count_pair_type(t, b) == Int(it == grouped.end() ? 0 : it->second));
        });
      });
    }
  }
  SECTION("summing over complement types recovers count_type") {
    for (int n = 1; n <= 7; ++n)
      for_each_type_vector(n, [&](const TypeVector& t) {
        Int total = 0;
        for_each_type_vector(n, [&](const TypeVector& b) { total += count_pair_type(t, b); });
        CHECK(total == count_type(t));
      });
  }
  SECTION("one-block type forces the all-singleton complement") {
    for (int n = 2; n <= 7; ++n) {
      CHECK(count_pair_type(one_block_type(n), all_singleton_type(n)) == 1);
      CHECK(count_pair_type(one_block_type(n), one_block_type(n)) == 0);
    }
  }
  SECTION("k-equal specialization") {
    for (int k = 2; k <= 4; ++k)
      for (int n = 1; k * n <= 8; ++n) {
        int ground = k * n;
        std::vector<long> eq(static_cast<std::size_t>(ground), 0);
        eq[static_cast<std::size_t>(k) - 1] = n;
        TypeVector t = TypeVector::validated(ground, eq);
        std::map<TypeVector, long> grouped;
        auto e = iter_k_equal(k, n);
        while (auto p = e.next()) ++grouped[block_type(kreweras(*p))];
        for (const auto& [b, actual] : grouped) {
          Int denom = 1;
          for (long bi : b.r) denom *= factorial(bi);
          CHECK(count_pair_type(t, b) ==
                exact_div(Int(k) * factorial(static_cast<long>(k - 1) * n), denom));
          CHECK(count_pair_type(t, b) == Int(actual));
        }
      }
  }
}

TEST_CASE("nc21_ratio") {
  for (int k = 1; k <= 6; ++k) CHECK(nc21_ratio(k, 1) == 1);
  CHECK(nc21_ratio(2, 2) == 1);
  CHECK(nc21_ratio(100, 3) > Rat(99, 100));
  for (int n = 1; n <= 4; ++n)
    for (long k : {40L, 64L, 100L, 333L})
      CHECK(nc21_ratio(static_cast<int>(k), n) >= 1 - Rat(10, k));
}

TEST_CASE("type vector stream visits every integer partition once") {
  const std::map<int, long> partition_numbers{{1, 1}, {2, 2}, {3, 3}, {4, 5},
                                              {5, 7}, {6, 11}, {7, 15}};
  for (const auto& [n, want] : partition_numbers) {
    std::set<std::vector<long>> seen;
    for_each_type_vector(n, [&](const TypeVector& t) { seen.insert(t.r); });
    CHECK(Int(seen.size()) == Int(want));
  }
}
