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

// Experiments and executable security checks: invertibility frequency,
// brute-force cost, known-plaintext collisions, the related-key witnesses,
// and the chosen-plaintext attack on the 2x2 strawman.

#ifndef MATFHE_ANALYSIS_H_
#define MATFHE_ANALYSIS_H_

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "matfhe/cipher.h"
#include "matfhe/keygen.h"
#include "matfhe/matrix.h"
#include "matfhe/random.h"
#include "matfhe/ring.h"

namespace matfhe {

// p_i = the first m odd primes, q_i = the next m. m = 2 gives N = 1155.
RingModulus toy_modulus(std::size_t m);

// ---- invertibility -------------------------------------------------------

struct InvertibilityTrial {
  Integer modulus;
  std::size_t trial;
  std::size_t samples;
  std::size_t invertible;
};

// For every modulus, `repeats` trials of `samples` uniform dim x dim
// matrices; counts how many are invertible.
std::vector<InvertibilityTrial> invertibility_experiment(
    std::span<const Integer> moduli, std::size_t samples, std::size_t repeats,
    RandomSource& rng, std::size_t dim = 4);

void write_invertibility_csv(std::ostream& out,
                             std::span<const InvertibilityTrial> rows);

// Enumerates all N^(dim*dim) matrices. Only sensible for tiny cases.
struct ExhaustiveCount {
  Integer invertible;
  Integer total;
};
ExhaustiveCount exhaustive_invertible_count(std::size_t dim, const Integer& modulus);

// prod over primes p | N of prod_{i=1..dim} (1 - p^-i). Factors N by trial
// division, so N must be small.
double invertible_probability(std::size_t dim, const Integer& modulus);

// ---- brute force ---------------------------------------------------------

// log2(l^2) + b*l^2, the exponent of l^2 * 2^(b l^2).
double brute_force_cost(std::size_t b, std::size_t l);

// The exponent printed in the published table, for b in {10, 16, 18}.
std::optional<int> reported_brute_force_exponent(std::size_t b);

// ---- known-plaintext collisions ------------------------------------------

struct CollisionEstimate {
  std::size_t hits;
  std::size_t trials;
  // r of the target encryption (dim-4 keys only).
  std::optional<Integer> target_r;
  double fraction() const {
    return trials == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(trials);
  }
};

// Encrypts x once, then `trials` more times, counting exact matches.
CollisionEstimate kpa_collision_estimate(const KeyTuple& key, const Integer& x,
                                         std::size_t trials, RandomSource& rng);

// 1 / (N * 3^m), the nominal collision probability.
double nominal_collision_probability(const RingModulus& modulus);
// 1 / ((N - 1) * 3^m): r ranges over N - 1 values. Exact for a target whose
// r differs from x modulo every f_i.
double exact_collision_probability(const RingModulus& modulus);
// Collision probability given the target's r. Where r = x (mod f_i) the row
// choice for f_i is invisible, so that factor contributes 1 instead of 1/3.
double conditional_collision_probability(const RingModulus& modulus, const Integer& x,
                                         const Integer& target_r);

// ---- related keys --------------------------------------------------------

// k_i with k_i = (1 2)(3 4) mod p_i, I mod q_i and I mod f_j (j != i).
// i is 1-based. Requires a modulus that knows its p and q.
RingMatrix lemma6_witness(std::size_t i, const RingModulus& modulus);

struct Lemma7Result {
  Integer y;
  bool holds;
  std::vector<Integer> diagonal;  // of k_i D k_i^-1
};

// With D the diagonal enc4 builds from (x, rnd), returns y = (k_i D k_i)_11
// and whether dec(enc4(x, key, rnd), k_i * key) == y.
Lemma7Result lemma7_check(const Integer& x, const KeyTuple& key,
                          const Enc4Randomness& rnd, std::size_t i);

// ---- 2x2 strawman --------------------------------------------------------

// diag(x, r).
RingMatrix strawman_e1(const Integer& x, const Integer& r, const Integer& n);
// k^-1 diag(x, r) k.
RingMatrix strawman_e2(const Integer& x, const Integer& r, const RingMatrix& k,
                       const RingMatrix& k_inv);

struct PlainCipherPair {
  Integer x;
  RingMatrix c;
};

struct StrawmanRecovery {
  // Per pair: trace = x + r and det = x * r, with r = trace - x.
  std::vector<Integer> sums;
  std::vector<Integer> products;
  std::vector<Integer> r_values;
  // False when the pairs do not pin the key down (one pair, or ciphertexts
  // with more than one hidden slot).
  bool determined = false;
  // Row v with v * C = x * v for every pair; set when determined.
  std::optional<std::vector<Integer>> eigen_row;

  // x from a fresh ciphertext under the same key. Requires eigen_row.
  Integer decrypt(const RingMatrix& c) const;
};

// Checks x * r == det for every pair (InconsistentPairsError otherwise).
// With two or more 2x2 pairs, derives the left eigenvector of the key from
// the first pair and confirms it against the rest; that vector decrypts
// any further ciphertext. On 4x4 ciphertexts the characteristic relations
// hide three slots behind two equations and nothing is recovered.
StrawmanRecovery strawman_cpa_attack(std::span<const PlainCipherPair> pairs);

}  // namespace matfhe

#endif  // MATFHE_ANALYSIS_H_
