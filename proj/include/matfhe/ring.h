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

#ifndef MATFHE_RING_H_
#define MATFHE_RING_H_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "matfhe/integer.h"
#include "matfhe/random.h"

namespace matfhe {

// The ambient ring Z_N with N = f_1 * ... * f_m and f_i = p_i * q_i, all 2m
// numbers odd and pairwise coprime. A modulus read back from a key file
// only knows the f_i; has_pairs() is false in that case.
class RingModulus {
 public:
  // Validates oddness and pairwise coprimality of p ∪ q.
  static RingModulus from_pairs(std::vector<Integer> p, std::vector<Integer> q,
                                std::size_t lambda);
  // Validates oddness and pairwise coprimality of the f_i.
  static RingModulus from_factors(std::vector<Integer> f, std::size_t lambda);

  std::size_t m() const { return f_.size(); }
  std::size_t lambda() const { return lambda_; }
  bool has_pairs() const { return !p_.empty(); }
  const std::vector<Integer>& p() const { return p_; }
  const std::vector<Integer>& q() const { return q_; }
  const std::vector<Integer>& f() const { return f_; }
  const Integer& n() const { return n_; }

  bool operator==(const RingModulus& other) const;

 private:
  RingModulus() = default;

  std::size_t lambda_ = 0;
  std::vector<Integer> p_;
  std::vector<Integer> q_;
  std::vector<Integer> f_;
  Integer n_;
};

enum class BitLengthPolicy {
  // Every p_i, q_i must be odd with exactly lambda/2 bits.
  kEnforce,
  // Accept whatever the random source yields; reproduces toy examples.
  kRelaxed,
};

// Draws odd lambda/2-bit candidates and keeps those coprime to every value
// accepted so far. The first m accepted become p, the next m become q.
// Gives up with ResourceExhaustedError after 64*m rejected draws.
RingModulus generate_coprime_set(std::size_t m, std::size_t lambda,
                                 RandomSource& rng,
                                 BitLengthPolicy policy = BitLengthPolicy::kEnforce);

// b with a*b = 1 (mod n). Throws NotInvertibleError carrying gcd(a, n).
Integer mod_inverse(const Integer& a, const Integer& n);

struct Congruence {
  Integer value;
  Integer modulus;
};

// Unique x in [0, prod moduli) with x = value_i (mod modulus_i), combined
// left to right Garner-style. Throws NonCoprimeModuliError when two moduli
// share a factor and InvalidArgumentError when a value is out of range.
Integer crt_solve(std::span<const Congruence> residues);

}  // namespace matfhe

#endif  // MATFHE_RING_H_
