#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include <wedderburn/numtheory.hpp>

#include "oracles.hpp"

using namespace wedderburn;

TEST(Totient, KnownValues) {
  EXPECT_EQ(totient(1), 1u);
  EXPECT_EQ(totient(2), 1u);
  EXPECT_EQ(totient(5), 4u);
  EXPECT_EQ(totient(12), 4u);
  EXPECT_EQ(totient(36), 12u);
  EXPECT_EQ(totient(97), 96u);
  EXPECT_EQ(totient(360), 96u);
}

TEST(Totient, MatchesGcdScan) {
  for (u64 m = 1; m <= 300; ++m) EXPECT_EQ(totient(m), oracle::totient_scan(m)) << "m=" << m;
}

TEST(Totient, RejectsZero) { EXPECT_THROW(totient(0), std::invalid_argument); }

TEST(IsPrime, SmallValues) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(3));
  EXPECT_FALSE(is_prime(561));    // Carmichael
  EXPECT_FALSE(is_prime(1729));   // Carmichael
  EXPECT_TRUE(is_prime(97));
  EXPECT_TRUE(is_prime((1ull << 61) - 1));
  EXPECT_FALSE(is_prime((1ull << 61) + 1));
}

TEST(Factorize, KnownValues) {
  using pv = std::vector<std::pair<u64, unsigned>>;
  EXPECT_EQ(factorize(1), pv{});
  EXPECT_EQ(factorize(12), (pv{{2, 2}, {3, 1}}));
  EXPECT_EQ(factorize(600851475143ull), (pv{{71, 1}, {839, 1}, {1471, 1}, {6857, 1}}));
  EXPECT_EQ(factorize((1ull << 61) - 1), (pv{{(1ull << 61) - 1, 1}}));
  EXPECT_THROW(factorize(0), std::invalid_argument);
}

TEST(Divisors, SortedAndComplete) {
  EXPECT_EQ(divisors_of(1), (std::vector<u64>{1}));
  EXPECT_EQ(divisors_of(36), (std::vector<u64>{1, 2, 3, 4, 6, 9, 12, 18, 36}));
  EXPECT_EQ(divisors_of(97), (std::vector<u64>{1, 97}));
}

TEST(MultOrder, KnownValues) {
  EXPECT_EQ(mult_order(2, 5), 4u);
  EXPECT_EQ(mult_order(2, 7), 3u);
  EXPECT_EQ(mult_order(2, 15), 4u);
  EXPECT_EQ(mult_order(2, 1), 1u);
  EXPECT_EQ(mult_order(9, 1), 1u);
  EXPECT_EQ(mult_order(7, 13), 12u);
  EXPECT_EQ(mult_order(3, 16), 4u);
}

TEST(MultOrder, RejectsNonInvertible) {
  EXPECT_THROW(mult_order(6, 15), std::domain_error);
  EXPECT_THROW(mult_order(0, 5), std::domain_error);
  EXPECT_THROW(mult_order(2, 0), std::invalid_argument);
}

TEST(MultOrder, IsMinimalAndDividesTotient) {
  for (u64 m = 2; m <= 80; ++m) {
    for (u64 a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      const u64 ord = mult_order(a, m);
      EXPECT_EQ(totient(m) % ord, 0u) << a << " mod " << m;
      // minimality by direct powering
      u64 v = 1;
      for (u64 k = 1; k < ord; ++k) {
        v = v * a % m;
        EXPECT_NE(v, 1u) << a << "^" << k << " mod " << m;
      }
      EXPECT_EQ(v * a % m, 1u);
    }
  }
}

TEST(ModulusTuple, Validation) {
  EXPECT_THROW(ModulusTuple(std::vector<u64>{}), std::invalid_argument);
  EXPECT_THROW(ModulusTuple({3, 0, 5}), std::invalid_argument);
  EXPECT_EQ(ModulusTuple({5, 5}).size(), 2u);
}

TEST(TupleCount, ProductAndOverflow) {
  EXPECT_EQ(tuple_count(ModulusTuple{5, 5}), 25u);
  EXPECT_EQ(tuple_count(ModulusTuple{1}), 1u);
  const u64 big = 1ull << 31;
  EXPECT_THROW(tuple_count(ModulusTuple{big, big, big}), std::overflow_error);
}

TEST(LinearIndex, RoundTripAndOrder) {
  const ModulusTuple m{5, 3, 2};
  IndexTuple prev;
  for (u64 lin = 0; lin < tuple_count(m); ++lin) {
    const IndexTuple x = index_from_linear(lin, m);
    EXPECT_EQ(linear_index(x, m), lin);
    if (lin > 0) {
      EXPECT_LT(prev, x);  // linear order == lexicographic order
    }
    prev = x;
  }
  EXPECT_THROW(index_from_linear(30, m), std::invalid_argument);
  EXPECT_THROW(linear_index({5, 0, 0}, m), std::invalid_argument);
  EXPECT_THROW(linear_index({0, 0}, m), std::invalid_argument);
}

TEST(NextTuple, WalksLexicographically) {
  const ModulusTuple m{2, 3};
  IndexTuple x(2, 0);
  std::vector<IndexTuple> seen{x};
  while (next_tuple(x, m)) seen.push_back(x);
  EXPECT_EQ(seen.size(), 6u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  EXPECT_EQ(x, (IndexTuple{0, 0}));  // wrapped
}

TEST(Classify, KnownValues) {
  EXPECT_EQ(classify({0, 0}, ModulusTuple{5, 5}), (DivisorTuple{5, 5}));
  EXPECT_EQ(classify({2, 0}, ModulusTuple{5, 5}), (DivisorTuple{1, 5}));
  EXPECT_EQ(classify({1, 1}, ModulusTuple{5, 5}), (DivisorTuple{1, 1}));
  EXPECT_EQ(classify({3, 4}, ModulusTuple{6, 8}), (DivisorTuple{3, 4}));
  EXPECT_EQ(classify({0}, ModulusTuple{1}), (DivisorTuple{1}));
}

TEST(Classify, RangeErrors) {
  EXPECT_THROW(classify({5, 0}, ModulusTuple{5, 5}), std::invalid_argument);
  EXPECT_THROW(classify({0}, ModulusTuple{5, 5}), std::invalid_argument);
}

TEST(DivisorTuples, KnownLists) {
  const auto one = divisor_tuples(ModulusTuple{1});
  EXPECT_EQ(one, (std::vector<DivisorTuple>{DivisorTuple{1}}));

  const auto grid = divisor_tuples(ModulusTuple{5, 5});
  EXPECT_EQ(grid, (std::vector<DivisorTuple>{{1, 1}, {1, 5}, {5, 1}, {5, 5}}));

  const auto mixed = divisor_tuples(ModulusTuple{4, 6});
  EXPECT_EQ(mixed.size(), 12u);  // 3 divisors of 4 times 4 divisors of 6
  EXPECT_EQ(mixed.front(), (DivisorTuple{1, 1}));
  EXPECT_EQ(mixed.back(), (DivisorTuple{4, 6}));
  EXPECT_TRUE(std::is_sorted(mixed.begin(), mixed.end()));
}

TEST(BlockPartition, CoversEveryTupleOnce) {
  for (const ModulusTuple& m : {ModulusTuple{12}, ModulusTuple{4, 6}, ModulusTuple{2, 3, 5},
                                ModulusTuple{5, 5}}) {
    std::map<std::vector<u64>, u64> counts;
    IndexTuple x(m.size(), 0);
    for (u64 lin = 0; lin < tuple_count(m); ++lin, next_tuple(x, m))
      ++counts[classify(x, m).entries];
    u64 covered = 0;
    for (const DivisorTuple& d : divisor_tuples(m)) {
      ASSERT_TRUE(counts.count(d.entries)) << "empty block";
      EXPECT_EQ(counts.at(d.entries), block_size(d, m));
      covered += counts.at(d.entries);
    }
    EXPECT_EQ(covered, tuple_count(m));                   // partition
    EXPECT_EQ(counts.size(), divisor_tuples(m).size());   // labels are exactly the divisors
  }
}

TEST(BlockSize, KnownValues) {
  const ModulusTuple m{5, 5};
  EXPECT_EQ(block_size(DivisorTuple{1, 1}, m), 16u);
  EXPECT_EQ(block_size(DivisorTuple{1, 5}, m), 4u);
  EXPECT_EQ(block_size(DivisorTuple{5, 1}, m), 4u);
  EXPECT_EQ(block_size(DivisorTuple{5, 5}, m), 1u);
  EXPECT_EQ(block_size(DivisorTuple{2, 3}, ModulusTuple{4, 6}), 1u);
  EXPECT_THROW(block_size(DivisorTuple{3, 1}, ModulusTuple{5, 5}), std::invalid_argument);
  EXPECT_THROW(block_size(DivisorTuple{1}, ModulusTuple{5, 5}), std::invalid_argument);
}

TEST(GaussIdentity, KnownAndExhaustive) {
  const GaussIdentity g5 = gauss_identity(5);
  EXPECT_EQ(g5.sum, 5u);
  EXPECT_TRUE(g5.holds);
  EXPECT_TRUE(gauss_identity(1).holds);
  EXPECT_TRUE(gauss_identity(360).holds);
  for (u64 m = 1; m <= 1000; ++m) {
    const GaussIdentity g = gauss_identity(m);
    EXPECT_EQ(g.sum, m);
    EXPECT_TRUE(g.holds);
  }
  EXPECT_THROW(gauss_identity(0), std::invalid_argument);
}

TEST(PrimePower, DecomposeAndReject) {
  EXPECT_EQ(prime_power_of(2).p, 2u);
  EXPECT_EQ(prime_power_of(2).exponent, 1u);
  EXPECT_EQ(prime_power_of(9).p, 3u);
  EXPECT_EQ(prime_power_of(9).exponent, 2u);
  EXPECT_EQ(prime_power_of(8).exponent, 3u);
  EXPECT_THROW(prime_power_of(6), std::domain_error);
  EXPECT_THROW(prime_power_of(1), std::domain_error);
  EXPECT_THROW(prime_power_of(0), std::domain_error);
}
