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

#include "matfhe/keygen.h"

#include <cmath>
#include <string>
#include <utility>

#include "matfhe/errors.h"

namespace matfhe {
namespace {

void check_key_dim(std::size_t dim) {
  if (dim != 4 && dim != 8) {
    throw InvalidArgumentError("key dimension must be 4 or 8, got " +
                               std::to_string(dim));
  }
}

}  // namespace

KeyTuple KeyTuple::from_matrix(RingModulus modulus, RingMatrix k) {
  check_key_dim(k.dim());
  if (k.modulus() != modulus.n()) {
    throw MismatchError("key matrix modulus does not match N");
  }
  RingMatrix k_inv = inverse(k);
  return KeyTuple(std::move(modulus), std::move(k), std::move(k_inv));
}

KeyTuple KeyTuple::from_matrices(RingModulus modulus, RingMatrix k,
                                 RingMatrix k_inv) {
  check_key_dim(k.dim());
  k.check_compatible(k_inv);
  if (k.modulus() != modulus.n()) {
    throw MismatchError("key matrix modulus does not match N");
  }
  const RingMatrix id = RingMatrix::identity(k.dim(), k.modulus());
  if (k * k_inv != id || k_inv * k != id) {
    throw InvalidArgumentError("k_inv is not the inverse of k");
  }
  return KeyTuple(std::move(modulus), std::move(k), std::move(k_inv));
}

KeySet KeySet::from_components(RingModulus modulus,
                               std::vector<KeyTuple> components) {
  if (components.size() < 2) {
    throw InvalidArgumentError("a key set needs at least two components");
  }
  RingMatrix product = components.front().k();
  RingMatrix product_inv = components.front().k_inv();
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (!(components[i].modulus() == modulus)) {
      throw MismatchError("key set components must share one modulus");
    }
    if (i > 0) {
      product = product * components[i].k();
      // (k1 k2 ... kl)^-1 = kl^-1 ... k2^-1 k1^-1
      product_inv = components[i].k_inv() * product_inv;
    }
  }
  KeyTuple master =
      KeyTuple::from_matrices(modulus, std::move(product), std::move(product_inv));
  return KeySet(std::move(modulus), std::move(master), std::move(components));
}

KeyTuple keygen_for(const RingModulus& modulus, std::size_t dim,
                    RandomSource& rng) {
  check_key_dim(dim);
  RingMatrix k = random_invertible(dim, modulus.n(), rng);
  return KeyTuple::from_matrix(modulus, std::move(k));
}

KeyTuple keygen(std::size_t dim, std::size_t m, std::size_t lambda,
                RandomSource& rng, BitLengthPolicy policy) {
  check_key_dim(dim);
  RingModulus modulus = generate_coprime_set(m, lambda, rng, policy);
  return keygen_for(modulus, dim, rng);
}

KeyTuple keygen4(std::size_t m, std::size_t lambda, RandomSource& rng,
                 BitLengthPolicy policy) {
  return keygen(4, m, lambda, rng, policy);
}

KeySet keyset_gen_for(const RingModulus& modulus, std::size_t dim,
                      std::size_t l, RandomSource& rng) {
  check_key_dim(dim);
  if (l < 2) throw InvalidArgumentError("a key set needs l >= 2");
  std::vector<KeyTuple> components;
  components.reserve(l);
  for (std::size_t i = 0; i < l; ++i) {
    components.push_back(keygen_for(modulus, dim, rng));
  }
  return KeySet::from_components(modulus, std::move(components));
}

KeySet keyset_gen(std::size_t dim, std::size_t l, std::size_t m,
                  std::size_t lambda, RandomSource& rng,
                  BitLengthPolicy policy) {
  check_key_dim(dim);
  if (l < 2) throw InvalidArgumentError("a key set needs l >= 2");
  RingModulus modulus = generate_coprime_set(m, lambda, rng, policy);
  return keyset_gen_for(modulus, dim, l, rng);
}

double cpa_budget(std::size_t m, std::size_t lambda) {
  return static_cast<double>(m) * 3.0 * std::log(static_cast<double>(lambda));
}

}  // namespace matfhe
