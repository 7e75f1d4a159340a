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

#ifndef MATFHE_KEYGEN_H_
#define MATFHE_KEYGEN_H_

#include <cstddef>
#include <vector>

#include "matfhe/matrix.h"
#include "matfhe/random.h"
#include "matfhe/ring.h"

namespace matfhe {

// Secret key material <f_i, N, k, k^-1>. Always satisfies k * k_inv == I.
class KeyTuple {
 public:
  // Computes k^-1; throws NotInvertibleError if k is singular mod N.
  static KeyTuple from_matrix(RingModulus modulus, RingMatrix k);
  // Trusts nothing: checks k * k_inv == k_inv * k == I.
  static KeyTuple from_matrices(RingModulus modulus, RingMatrix k,
                                RingMatrix k_inv);

  const RingModulus& modulus() const { return modulus_; }
  const RingMatrix& k() const { return k_; }
  const RingMatrix& k_inv() const { return k_inv_; }
  std::size_t dim() const { return k_.dim(); }
  const Integer& n() const { return modulus_.n(); }

  bool operator==(const KeyTuple& other) const = default;

 private:
  KeyTuple(RingModulus modulus, RingMatrix k, RingMatrix k_inv)
      : modulus_(std::move(modulus)), k_(std::move(k)), k_inv_(std::move(k_inv)) {}

  RingModulus modulus_;
  RingMatrix k_;
  RingMatrix k_inv_;
};

// Matching keys: master.k == components[0].k * ... * components[l-1].k.
class KeySet {
 public:
  static KeySet from_components(RingModulus modulus,
                                std::vector<KeyTuple> components);

  const RingModulus& modulus() const { return modulus_; }
  const KeyTuple& master() const { return master_; }
  const std::vector<KeyTuple>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }

 private:
  KeySet(RingModulus modulus, KeyTuple master, std::vector<KeyTuple> components)
      : modulus_(std::move(modulus)),
        master_(std::move(master)),
        components_(std::move(components)) {}

  RingModulus modulus_;
  KeyTuple master_;
  std::vector<KeyTuple> components_;
};

// Fresh modulus plus an invertible key of size `dim` (4 or 8) over it.
KeyTuple keygen(std::size_t dim, std::size_t m, std::size_t lambda,
                RandomSource& rng,
                BitLengthPolicy policy = BitLengthPolicy::kEnforce);

// 4x4 key generation.
KeyTuple keygen4(std::size_t m, std::size_t lambda, RandomSource& rng,
                 BitLengthPolicy policy = BitLengthPolicy::kEnforce);

// Key over an existing modulus.
KeyTuple keygen_for(const RingModulus& modulus, std::size_t dim,
                    RandomSource& rng);

// Draws l >= 2 independent component keys and multiplies them, in order,
// into the master key.
KeySet keyset_gen(std::size_t dim, std::size_t l, std::size_t m,
                  std::size_t lambda, RandomSource& rng,
                  BitLengthPolicy policy = BitLengthPolicy::kEnforce);

KeySet keyset_gen_for(const RingModulus& modulus, std::size_t dim,
                      std::size_t l, RandomSource& rng);

// Chosen-plaintext budget reported alongside a parameter set, taking the
// free polynomial as lambda^3: eta = m * ln(lambda^3). Nothing in the
// scheme consumes it.
double cpa_budget(std::size_t m, std::size_t lambda);

}  // namespace matfhe

#endif  // MATFHE_KEYGEN_H_
