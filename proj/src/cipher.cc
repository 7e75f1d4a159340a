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

#include "matfhe/cipher.h"

#include <algorithm>
#include <string>
#include <utility>

#include "matfhe/errors.h"
#include "matfhe/ring.h"

namespace matfhe {
namespace {

void check_plaintext(const Integer& x, const RingModulus& modulus) {
  if (x < 0 || x >= modulus.n()) {
    throw InvalidArgumentError("plaintext " + to_decimal(x) + " outside [0, " +
                               to_decimal(modulus.n()) + ")");
  }
}

void check_key(const KeyTuple& key, std::size_t dim) {
  if (key.dim() != dim) {
    throw MismatchError("expected a " + std::to_string(dim) + "x" +
                        std::to_string(dim) + " key, got dimension " +
                        std::to_string(key.dim()));
  }
}

Integer sample_distinct(const Integer& n, RandomSource& rng,
                        std::initializer_list<const Integer*> avoid) {
  while (true) {
    Integer v = rng.below(n);
    if (std::none_of(avoid.begin(), avoid.end(),
                     [&](const Integer* a) { return *a == v; })) {
      return v;
    }
  }
}

// Solves one CRT system per column of the m x width matrix given by cell().
template <typename CellFn>
std::vector<Integer> crt_columns(const Integer& x, const RingModulus& modulus,
                                 std::size_t width, CellFn cell) {
  const std::vector<Integer>& f = modulus.f();
  std::vector<Integer> diag;
  diag.reserve(width + 1);
  diag.push_back(x);
  std::vector<Congruence> system(f.size());
  for (std::size_t j = 0; j < width; ++j) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      system[i].value = mod(cell(i, j), f[i]);
      system[i].modulus = f[i];
    }
    diag.push_back(crt_solve(system));
  }
  return diag;
}

Ciphertext conjugate(const std::vector<Integer>& diag, const KeyTuple& key) {
  return Ciphertext(lock(RingMatrix::diagonal(diag, key.n()), key));
}

}  // namespace

Enc4Randomness sample_enc4_randomness(const Integer& x, const RingModulus& modulus,
                                      RandomSource& rng) {
  Enc4Randomness rnd;
  rnd.r = sample_distinct(modulus.n(), rng, {&x});
  rnd.row_choices.resize(modulus.m());
  for (std::size_t& choice : rnd.row_choices) choice = rng.index_below(3);
  return rnd;
}

Enc8Randomness sample_enc8_randomness(const Integer& x, const RingModulus& modulus,
                                      RandomSource& rng) {
  if (modulus.n() < 3) {
    throw InvalidArgumentError("enc8 needs N >= 3 for three distinct values");
  }
  Enc8Randomness rnd;
  rnd.r1 = sample_distinct(modulus.n(), rng, {&x});
  rnd.r2 = sample_distinct(modulus.n(), rng, {&x, &rnd.r1});
  rnd.rows.resize(modulus.m());
  for (Enc8Row& row : rnd.rows) {
    row = {Slot::kPlain, Slot::kR1, Slot::kR1, Slot::kR1,
           Slot::kR2,    Slot::kR2, Slot::kR2};
    // Fisher-Yates; every one of the 140 distinct arrangements is equally
    // likely because each has the same number of preimage permutations.
    for (std::size_t i = row.size() - 1; i > 0; --i) {
      std::swap(row[i], row[rng.index_below(i + 1)]);
    }
  }
  return rnd;
}

std::vector<Integer> enc4_diagonal(const Integer& x, const RingModulus& modulus,
                                   const Enc4Randomness& rnd) {
  check_plaintext(x, modulus);
  check_plaintext(rnd.r, modulus);
  if (rnd.r == x) throw InvalidArgumentError("randomizer r must differ from x");
  if (rnd.row_choices.size() != modulus.m()) {
    throw InvalidArgumentError("need one row choice per factor f_i");
  }
  for (std::size_t choice : rnd.row_choices) {
    if (choice > 2) throw InvalidArgumentError("row choice must be 0, 1 or 2");
  }
  return crt_columns(x, modulus, 3, [&](std::size_t i, std::size_t j) -> const Integer& {
    return rnd.row_choices[i] == j ? x : rnd.r;
  });
}

std::vector<Integer> enc8_diagonal(const Integer& x, const RingModulus& modulus,
                                   const Enc8Randomness& rnd) {
  check_plaintext(x, modulus);
  check_plaintext(rnd.r1, modulus);
  check_plaintext(rnd.r2, modulus);
  if (rnd.r1 == x || rnd.r2 == x || rnd.r1 == rnd.r2) {
    throw InvalidArgumentError("r1, r2 and x must be pairwise distinct");
  }
  if (rnd.rows.size() != modulus.m()) {
    throw InvalidArgumentError("need one arrangement per factor f_i");
  }
  for (const Enc8Row& row : rnd.rows) {
    const auto plain = std::count(row.begin(), row.end(), Slot::kPlain);
    const auto r1 = std::count(row.begin(), row.end(), Slot::kR1);
    if (plain != 1 || r1 != 3) {
      throw InvalidArgumentError(
          "each arrangement must hold x once, r1 three times, r2 three times");
    }
  }
  return crt_columns(x, modulus, 7, [&](std::size_t i, std::size_t j) -> const Integer& {
    switch (rnd.rows[i][j]) {
      case Slot::kPlain:
        return x;
      case Slot::kR1:
        return rnd.r1;
      default:
        return rnd.r2;
    }
  });
}

Ciphertext enc4(const Integer& x, const KeyTuple& key, const Enc4Randomness& rnd) {
  check_key(key, 4);
  return conjugate(enc4_diagonal(x, key.modulus(), rnd), key);
}

Ciphertext enc4(const Integer& x, const KeyTuple& key, RandomSource& rng) {
  check_key(key, 4);
  check_plaintext(x, key.modulus());
  return enc4(x, key, sample_enc4_randomness(x, key.modulus(), rng));
}

Ciphertext enc8(const Integer& x, const KeyTuple& key, const Enc8Randomness& rnd) {
  check_key(key, 8);
  return conjugate(enc8_diagonal(x, key.modulus(), rnd), key);
}

Ciphertext enc8(const Integer& x, const KeyTuple& key, RandomSource& rng) {
  check_key(key, 8);
  check_plaintext(x, key.modulus());
  return enc8(x, key, sample_enc8_randomness(x, key.modulus(), rng));
}

Ciphertext encrypt(const Integer& x, const KeyTuple& key, RandomSource& rng) {
  return key.dim() == 8 ? enc8(x, key, rng) : enc4(x, key, rng);
}

Integer dec(const Ciphertext& c, const KeyTuple& key) {
  c.body().check_compatible(key.k());
  const std::size_t n = c.dim();
  // Only the first row of k * C and the first column of k^-1 matter.
  Integer out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Integer row_entry = 0;
    for (std::size_t t = 0; t < n; ++t) row_entry += key.k().at(0, t) * c.body().at(t, j);
    out += row_entry * key.k_inv().at(j, 0);
  }
  return mod(out, key.n());
}

std::vector<Integer> recover_diagonal(const Ciphertext& c, const KeyTuple& key) {
  return unlock(c.body(), key).diagonal_entries();
}

RingMatrix lock(const RingMatrix& a, const KeyTuple& key) {
  return key.k_inv() * a * key.k();
}

Ciphertext lock(const Ciphertext& c, const KeyTuple& key) {
  return Ciphertext(lock(c.body(), key));
}

RingMatrix unlock(const RingMatrix& b, const KeyTuple& key) {
  return key.k() * b * key.k_inv();
}

Ciphertext unlock(const Ciphertext& c, const KeyTuple& key) {
  return Ciphertext(unlock(c.body(), key));
}

}  // namespace matfhe
