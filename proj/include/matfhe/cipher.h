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

#ifndef MATFHE_CIPHER_H_
#define MATFHE_CIPHER_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "matfhe/keygen.h"
#include "matfhe/matrix.h"
#include "matfhe/random.h"

namespace matfhe {

// A ciphertext is nothing but a dim x dim matrix over Z_N. It carries no key
// identifier, so fresh and evaluated ciphertexts look the same.
class Ciphertext {
 public:
  explicit Ciphertext(RingMatrix body) : body_(std::move(body)) {}

  const RingMatrix& body() const { return body_; }
  std::size_t dim() const { return body_.dim(); }
  const Integer& modulus() const { return body_.modulus(); }

  Ciphertext& operator+=(const Ciphertext& other) {
    body_ += other.body_;
    return *this;
  }

  bool operator==(const Ciphertext& other) const = default;

 private:
  RingMatrix body_;
};

// Randomness of one 4x4 encryption: r != x, and for every factor f_i the
// index (0, 1 or 2) of the row of
//   [x r r]
//   [r x r]
//   [r r x]
// used as the residues mod f_i.
struct Enc4Randomness {
  Integer r;
  std::vector<std::size_t> row_choices;
};

// Slot labels for one row of the 8x8 arrangement.
enum class Slot : std::uint8_t { kPlain = 0, kR1 = 1, kR2 = 2 };
using Enc8Row = std::array<Slot, 7>;

// Randomness of one 8x8 encryption: r1, r2 distinct from x and each other;
// each row holds x once, r1 three times and r2 three times.
struct Enc8Randomness {
  Integer r1;
  Integer r2;
  std::vector<Enc8Row> rows;
};

// r uniform over Z_N \ {x} by rejection, row choices uniform with
// replacement. Consumes the rng in that order.
Enc4Randomness sample_enc4_randomness(const Integer& x, const RingModulus& modulus,
                                      RandomSource& rng);
// r1 then r2 by rejection, then a uniform shuffle of each row.
Enc8Randomness sample_enc8_randomness(const Integer& x, const RingModulus& modulus,
                                      RandomSource& rng);

// diag(x, x_1, x_2, x_3) before conjugation; x_j solves x_j = X_ij (mod f_i).
std::vector<Integer> enc4_diagonal(const Integer& x, const RingModulus& modulus,
                                   const Enc4Randomness& rnd);
// diag(x, x_1, ..., x_7).
std::vector<Integer> enc8_diagonal(const Integer& x, const RingModulus& modulus,
                                   const Enc8Randomness& rnd);

// k^-1 * diag(...) * k. x must lie in [0, N).
Ciphertext enc4(const Integer& x, const KeyTuple& key, const Enc4Randomness& rnd);
Ciphertext enc4(const Integer& x, const KeyTuple& key, RandomSource& rng);
Ciphertext enc8(const Integer& x, const KeyTuple& key, const Enc8Randomness& rnd);
Ciphertext enc8(const Integer& x, const KeyTuple& key, RandomSource& rng);

// enc4 or enc8 depending on the key dimension.
Ciphertext encrypt(const Integer& x, const KeyTuple& key, RandomSource& rng);

// (k * C * k^-1)_11. Nothing about the rest of the diagonal is checked; a
// ciphertext under some other key decrypts to garbage, silently.
Integer dec(const Ciphertext& c, const KeyTuple& key);
// Full diagonal of k * C * k^-1, for diagnostics.
std::vector<Integer> recover_diagonal(const Ciphertext& c, const KeyTuple& key);

// k^-1 * A * k.
RingMatrix lock(const RingMatrix& a, const KeyTuple& key);
Ciphertext lock(const Ciphertext& c, const KeyTuple& key);
// k * B * k^-1.
RingMatrix unlock(const RingMatrix& b, const KeyTuple& key);
Ciphertext unlock(const Ciphertext& c, const KeyTuple& key);

}  // namespace matfhe

#endif  // MATFHE_CIPHER_H_
