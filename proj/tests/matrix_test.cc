/*
 * Copyright 2026 The matfhe Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "matfhe/matrix.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "matfhe/errors.h"
#include "matfhe/random.h"
#include "matfhe/ring.h"
#include "test_support.h"

namespace matfhe {
namespace {

using testing::single_printed_k;
using testing::single_printed_k_inv;
using testing::kToyN;
using testing::mat4;

// Leibniz formula over all permutations, reduced at the end.
Integer permutation_sum_det(const RingMatrix& a) {
  const std::size_t n = a.dim();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Integer sum = 0;
  do {
    Integer term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= a.at(i, perm[i]);
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) inversions += perm[i] > perm[j];
    }
    if (inversions % 2) {
      sum -= term;
    } else {
      sum += term;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return mod(sum, a.modulus());
}

RingMatrix entrywise_sum(const RingMatrix& a, const RingMatrix& b) {
  RingMatrix out(a.dim(), a.modulus());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) out.set(i, j, a.at(i, j) + b.at(i, j));
  }
  return out;
}

RingMatrix schoolbook(const RingMatrix& a, const RingMatrix& b) {
  RingMatrix out(a.dim(), a.modulus());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Integer s = 0;
      for (std::size_t k = 0; k < a.dim(); ++k) s += a.at(i, k) * b.at(k, j);
      out.set(i, j, s);
    }
  }
  return out;
}

// Above 2^62 the matrices switch to GMP cells.
const Integer kWideN = (Integer(1) << 80) + 13;

TEST(RingMatrix, ConstructionChecks) {
  EXPECT_THROW(RingMatrix(0, kToyN), InvalidArgumentError);
  EXPECT_THROW(RingMatrix(9, kToyN), InvalidArgumentError);
  EXPECT_THROW(RingMatrix(4, 1), InvalidArgumentError);
  const std::vector<Integer> bad(16, kToyN);
  EXPECT_THROW(RingMatrix::from_entries(4, kToyN, bad), InvalidArgumentError);
  const std::vector<Integer> short_list(15, 0);
  EXPECT_THROW(RingMatrix::from_entries(4, kToyN, short_list), InvalidArgumentError);
  EXPECT_TRUE(RingMatrix(4, kToyN).is_zero());
}

TEST(RingMatrix, SetReducesModN) {
  RingMatrix a(2, kToyN);
  a.set(0, 1, 1156);
  a.set(1, 0, -1);
  EXPECT_EQ(a.at(0, 1), 1);
  EXPECT_EQ(a.at(1, 0), 1154);
}

TEST(MatAdd, ZeroIsIdentity) {
  SeededRandom rng(1);
  const RingMatrix a = random_matrix(4, kToyN, rng);
  EXPECT_EQ(mat_add(a, RingMatrix(4, kToyN)), a);
}

TEST(MatAdd, WorkedExampleSum) {
  const RingMatrix sum = mat_add(testing::pair_c1().body(), testing::pair_c2().body());
  EXPECT_EQ(sum.at(0, 0), 8);
  EXPECT_EQ(sum.at(0, 1), 276);
  EXPECT_EQ(sum.at(0, 2), 147);
  EXPECT_EQ(sum.at(0, 3), 147);
}

TEST(MatAdd, MatchesEntrywiseOracle) {
  SeededRandom rng(2);
  for (const Integer& n : {kToyN, kWideN}) {
    for (int i = 0; i < 100; ++i) {
      const RingMatrix a = random_matrix(4, n, rng);
      const RingMatrix b = random_matrix(4, n, rng);
      ASSERT_EQ(a + b, entrywise_sum(a, b));
      ASSERT_EQ((a + b) - b, a);
    }
  }
}

TEST(MatAdd, MismatchThrows) {
  EXPECT_THROW(mat_add(RingMatrix(4, kToyN), RingMatrix(4, 1157)), MismatchError);
  EXPECT_THROW(mat_add(RingMatrix(4, kToyN), RingMatrix(8, kToyN)), MismatchError);
  EXPECT_THROW(mat_mul(RingMatrix(4, kToyN), RingMatrix(4, 1157)), MismatchError);
}

TEST(MatAdd, SeparatelyBuiltModuliAreCompatible) {
  // Distinct modulus objects with the same value must interoperate.
  const RingMatrix a = RingMatrix::identity(4, Integer(1155));
  const RingMatrix b = RingMatrix::identity(4, Integer(1155));
  EXPECT_EQ((a + b).at(0, 0), 2);
  const RingMatrix wa = RingMatrix::identity(4, kWideN);
  const RingMatrix wb = RingMatrix::identity(4, Integer(kWideN));
  EXPECT_EQ((wa * wb), wa);
}

TEST(MatMul, IdentityAndWorkedKey) {
  SeededRandom rng(3);
  const RingMatrix a = random_matrix(4, kToyN, rng);
  EXPECT_EQ(mat_mul(a, RingMatrix::identity(4, kToyN)), a);
  EXPECT_EQ(mat_mul(single_printed_k(), single_printed_k_inv()), RingMatrix::identity(4, kToyN));
  EXPECT_EQ(mat_mul(single_printed_k_inv(), single_printed_k()), RingMatrix::identity(4, kToyN));
}

TEST(MatMul, TwoByTwoSchoolbookAt15) {
  SeededRandom rng(4);
  for (int i = 0; i < 200; ++i) {
    const RingMatrix a = random_matrix(2, 15, rng);
    const RingMatrix b = random_matrix(2, 15, rng);
    const RingMatrix c = a * b;
    ASSERT_EQ(c.at(0, 0), mod(a.at(0, 0) * b.at(0, 0) + a.at(0, 1) * b.at(1, 0), 15));
    ASSERT_EQ(c.at(0, 1), mod(a.at(0, 0) * b.at(0, 1) + a.at(0, 1) * b.at(1, 1), 15));
    ASSERT_EQ(c.at(1, 0), mod(a.at(1, 0) * b.at(0, 0) + a.at(1, 1) * b.at(1, 0), 15));
    ASSERT_EQ(c.at(1, 1), mod(a.at(1, 0) * b.at(0, 1) + a.at(1, 1) * b.at(1, 1), 15));
  }
}

TEST(MatMul, MatchesSchoolbookAllSizes) {
  SeededRandom rng(5);
  const Integer near_limit = (Integer(1) << 62) - 57;
  for (const Integer& n : {kToyN, near_limit, kWideN}) {
    for (std::size_t dim = 1; dim <= 8; ++dim) {
      const RingMatrix a = random_matrix(dim, n, rng);
      const RingMatrix b = random_matrix(dim, n, rng);
      ASSERT_EQ(a * b, schoolbook(a, b)) << "dim " << dim << " N " << n;
    }
  }
}

TEST(MatMul, RingLaws) {
  SeededRandom rng(6);
  for (int i = 0; i < 500; ++i) {
    const RingMatrix a = random_matrix(4, kToyN, rng);
    const RingMatrix b = random_matrix(4, kToyN, rng);
    const RingMatrix c = random_matrix(4, kToyN, rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Determinant, Basics) {
  EXPECT_EQ(determinant(RingMatrix::identity(4, kToyN)), 1);
  EXPECT_EQ(determinant(RingMatrix::identity(8, kToyN)), 1);
  RingMatrix twin = mat4({1, 2, 3, 4, 5, 6, 7, 8, 1, 2, 3, 4, 9, 10, 11, 12});
  EXPECT_EQ(determinant(twin), 0);
}

TEST(Determinant, WorkedKeyIsUnit) {
  const Integer v = determinant(single_printed_k());
  EXPECT_EQ(v, permutation_sum_det(single_printed_k()));
  EXPECT_EQ(gcd(v, kToyN), 1);
}

TEST(Determinant, MatchesPermutationSum) {
  SeededRandom rng(7);
  for (int i = 0; i < 200; ++i) {
    const RingMatrix a = random_matrix(4, kToyN, rng);
    ASSERT_EQ(determinant(a), permutation_sum_det(a));
  }
  for (std::size_t dim : {1u, 2u, 3u, 5u, 6u}) {
    for (int i = 0; i < 20; ++i) {
      const RingMatrix a = random_matrix(dim, kToyN, rng);
      ASSERT_EQ(determinant(a), permutation_sum_det(a)) << "dim " << dim;
    }
  }
  for (int i = 0; i < 3; ++i) {
    const RingMatrix a = random_matrix(8, kWideN, rng);
    ASSERT_EQ(determinant(a), permutation_sum_det(a));
  }
}

TEST(Determinant, EightByEightWithZeroPivots) {
  // Leading zeros force a row swap inside the elimination.
  RingMatrix a = RingMatrix::identity(8, kToyN);
  a.set(0, 0, 0);
  a.set(0, 1, 1);
  a.set(1, 0, 1);
  a.set(1, 1, 0);
  EXPECT_EQ(determinant(a), kToyN - 1);
  EXPECT_EQ(determinant(a), permutation_sum_det(a));
}

TEST(IsInvertible, Basics) {
  EXPECT_TRUE(is_invertible(RingMatrix::identity(4, kToyN)));
  EXPECT_FALSE(is_invertible(RingMatrix(4, kToyN)));
  // det = 3 shares a factor with N.
  EXPECT_FALSE(is_invertible(RingMatrix::scalar(1, kToyN, 3)));
}

TEST(IsInvertible, ExhaustiveTwoByTwoModSix) {
  int count = 0;
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      for (int c = 0; c < 6; ++c) {
        for (int d = 0; d < 6; ++d) {
          const std::vector<Integer> e{a, b, c, d};
          const RingMatrix m = RingMatrix::from_entries(2, 6, e);
          const bool inv = is_invertible(m);
          bool inverted = true;
          try {
            const RingMatrix mi = inverse(m);
            EXPECT_EQ(m * mi, RingMatrix::identity(2, 6));
          } catch (const NotInvertibleError&) {
            inverted = false;
          }
          ASSERT_EQ(inv, inverted);
          count += inv;
        }
      }
    }
  }
  // |GL2(Z2)| * |GL2(Z3)| = 6 * 48.
  EXPECT_EQ(count, 288);
}

TEST(Inverse, IdentityAndWorkedKey) {
  EXPECT_EQ(inverse(RingMatrix::identity(4, kToyN)), RingMatrix::identity(4, kToyN));
  const RingMatrix inv = inverse(single_printed_k());
  EXPECT_EQ(inv, single_printed_k_inv());
  EXPECT_EQ(inv.at(0, 0), 33);
  EXPECT_EQ(inv.at(0, 1), 929);
  EXPECT_EQ(inv.at(0, 2), 342);
  EXPECT_EQ(inv.at(0, 3), 393);
}

TEST(Inverse, SingularCarriesGcd) {
  try {
    inverse(RingMatrix::scalar(4, kToyN, 5));
    FAIL();
  } catch (const NotInvertibleError& e) {
    EXPECT_EQ(e.gcd(), 5);
  }
  try {
    inverse(RingMatrix(4, kToyN));
    FAIL();
  } catch (const NotInvertibleError& e) {
    EXPECT_EQ(e.gcd(), kToyN);
  }
}

TEST(Inverse, AdjugateIdentity) {
  SeededRandom rng(8);
  for (int i = 0; i < 100; ++i) {
    const RingMatrix a = random_matrix(4, kToyN, rng);
    ASSERT_EQ(a * adjugate(a), RingMatrix::scalar(4, kToyN, determinant(a)));
  }
}

TEST(RandomInvertible, OutputsAreInvertible) {
  SeededRandom rng(9);
  for (std::size_t dim : {2u, 3u, 4u, 8u}) {
    for (int i = 0; i < 50; ++i) {
      const RingMatrix a = random_invertible(dim, kToyN, rng);
      ASSERT_TRUE(is_invertible(a));
      ASSERT_EQ(a * inverse(a), RingMatrix::identity(dim, kToyN));
    }
  }
  const RingMatrix wide = random_invertible(8, kWideN, rng);
  EXPECT_EQ(wide * inverse(wide), RingMatrix::identity(8, kWideN));
}

TEST(RandomInvertible, InjectedWorkedKeyIsReturnedExactly) {
  for (const RingMatrix& k : {single_printed_k(), single_printed_k_inv()}) {
    ScriptedRandom rng(k.entries());
    SamplingStats stats;
    EXPECT_EQ(random_invertible(4, kToyN, rng, &stats), k);
    EXPECT_EQ(stats.draws, 16u);
    EXPECT_EQ(stats.element_rerolls, 0u);
    EXPECT_EQ(stats.full_attempts, 1u);
  }
}

TEST(RandomInvertible, DependentRowEntryIsRedrawn) {
  // Second row 2 * first row; its last entry gets replaced by 9.
  ScriptedRandom rng({1, 2, 3, 4, 2, 4, 6, 8, 9, 0, 1, 0, 0, 0, 0, 1, 0});
  SamplingStats stats;
  const RingMatrix a = random_invertible(4, kToyN, rng, &stats);
  EXPECT_EQ(stats.element_rerolls, 1u);
  EXPECT_EQ(rng.remaining(), 0u);
  EXPECT_EQ(a.at(1, 3), 9);
  EXPECT_TRUE(is_invertible(a));
}

TEST(RandomInvertible, FirstAttemptRateAt1155) {
  SeededRandom rng(10);
  int first_attempt = 0;
  for (int i = 0; i < 100; ++i) {
    SamplingStats stats;
    (void)random_invertible(4, kToyN, rng, &stats);
    first_attempt += stats.full_attempts == 1;
  }
  EXPECT_GE(first_attempt, 60);
}

TEST(RandomInvertible, ExhaustionIsReported) {
  // Only zeros: no row ever gets a unit pivot.
  ScriptedRandom rng({0}, /*cyclic=*/true);
  EXPECT_THROW(random_invertible(4, kToyN, rng), ResourceExhaustedError);
}

}  // namespace
}  // namespace matfhe
