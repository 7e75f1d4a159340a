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

#include "matfhe/ring.h"

#include <string>

#include "matfhe/errors.h"

namespace matfhe {
namespace {

void check_odd_pairwise_coprime(const std::vector<Integer>& values,
                                const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 3 || values[i] % 2 == 0) {
      throw InvalidArgumentError(std::string(what) + " must be odd and > 1, got " +
                                 to_decimal(values[i]));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (gcd(values[i], values[j]) != 1) {
        throw InvalidArgumentError(std::string(what) + " not pairwise coprime: " +
                                   to_decimal(values[j]) + ", " +
                                   to_decimal(values[i]));
      }
    }
  }
}

}  // namespace

RingModulus RingModulus::from_pairs(std::vector<Integer> p,
                                    std::vector<Integer> q,
                                    std::size_t lambda) {
  if (p.empty() || p.size() != q.size()) {
    throw InvalidArgumentError("need m >= 1 factor pairs with |p| == |q|");
  }
  std::vector<Integer> all = p;
  all.insert(all.end(), q.begin(), q.end());
  check_odd_pairwise_coprime(all, "p/q factors");

  RingModulus out;
  out.lambda_ = lambda;
  out.n_ = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.f_.push_back(p[i] * q[i]);
    out.n_ *= out.f_.back();
  }
  out.p_ = std::move(p);
  out.q_ = std::move(q);
  return out;
}

RingModulus RingModulus::from_factors(std::vector<Integer> f,
                                      std::size_t lambda) {
  if (f.empty()) throw InvalidArgumentError("need at least one factor");
  check_odd_pairwise_coprime(f, "factors f");
  RingModulus out;
  out.lambda_ = lambda;
  out.n_ = 1;
  for (const Integer& fi : f) out.n_ *= fi;
  out.f_ = std::move(f);
  return out;
}

bool RingModulus::operator==(const RingModulus& other) const {
  return lambda_ == other.lambda_ && f_ == other.f_ && n_ == other.n_;
}

RingModulus generate_coprime_set(std::size_t m, std::size_t lambda,
                                 RandomSource& rng, BitLengthPolicy policy) {
  if (m < 1) throw InvalidArgumentError("m must be at least 1");
  if (lambda < 8 || lambda % 2 != 0) {
    throw InvalidArgumentError("lambda must be even and at least 8");
  }
  const std::size_t bits = lambda / 2;
  const std::size_t budget = 64 * m;

  std::vector<Integer> accepted;
  std::size_t rejected = 0;
  while (accepted.size() < 2 * m) {
    Integer candidate = rng.odd_with_bits(bits);
    bool ok = candidate > 1 && candidate % 2 != 0;
    if (ok && policy == BitLengthPolicy::kEnforce) {
      ok = bit_length(candidate) == bits;
    }
    for (std::size_t i = 0; ok && i < accepted.size(); ++i) {
      ok = gcd(candidate, accepted[i]) == 1;
    }
    if (ok) {
      accepted.push_back(std::move(candidate));
    } else if (++rejected > budget) {
      throw ResourceExhaustedError(
          "could not find " + std::to_string(2 * m) +
          " pairwise coprime odd numbers of " + std::to_string(bits) +
          " bits; lambda is too small for m");
    }
  }
  std::vector<Integer> p(accepted.begin(), accepted.begin() + m);
  std::vector<Integer> q(accepted.begin() + m, accepted.end());
  return RingModulus::from_pairs(std::move(p), std::move(q), lambda);
}

Integer mod_inverse(const Integer& a, const Integer& n) {
  Integer reduced = mod(a, n);
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), reduced.get_mpz_t(), n.get_mpz_t()) == 0) {
    Integer g = gcd(reduced, n);
    throw NotInvertibleError(to_decimal(reduced) + " is not invertible mod " +
                                 to_decimal(n) + " (gcd " + to_decimal(g) + ")",
                             g);
  }
  return inv;
}

Integer crt_solve(std::span<const Congruence> residues) {
  if (residues.empty()) throw InvalidArgumentError("no congruences to solve");
  Integer x = 0;
  Integer product = 1;
  for (const Congruence& c : residues) {
    if (c.modulus < 1) throw InvalidArgumentError("CRT modulus must be positive");
    if (c.value < 0 || c.value >= c.modulus) {
      throw InvalidArgumentError("CRT value " + to_decimal(c.value) +
                                 " out of range for modulus " +
                                 to_decimal(c.modulus));
    }
    Integer g = gcd(product, c.modulus);
    if (g != 1) {
      throw NonCoprimeModuliError("CRT moduli share factor " + to_decimal(g));
    }
    // x' = x + product * ((value - x) * product^-1 mod modulus)
    Integer inv = mod_inverse(product, c.modulus);
    Integer t = mod((c.value - x) * inv, c.modulus);
    x += product * t;
    product *= c.modulus;
  }
  return x;
}

}  // namespace matfhe
