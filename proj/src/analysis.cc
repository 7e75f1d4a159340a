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

#include "matfhe/analysis.h"

#include <cmath>

#include "matfhe/errors.h"

namespace matfhe {

RingModulus toy_modulus(std::size_t m) {
  if (m == 0) throw InvalidArgumentError("m must be at least 1");
  std::vector<Integer> primes;
  Integer p = 2;
  while (primes.size() < 2 * m) {
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    primes.push_back(p);
  }
  std::vector<Integer> ps(primes.begin(), primes.begin() + m);
  std::vector<Integer> qs(primes.begin() + m, primes.end());
  // The bit-length bound is moot for toy parameters; report what the
  // largest factor needs.
  const std::size_t lambda = 2 * bit_length(primes.back());
  return RingModulus::from_pairs(std::move(ps), std::move(qs), lambda);
}

std::vector<InvertibilityTrial> invertibility_experiment(
    std::span<const Integer> moduli, std::size_t samples, std::size_t repeats,
    RandomSource& rng, std::size_t dim) {
  if (samples == 0) throw InvalidArgumentError("samples must be at least 1");
  std::vector<InvertibilityTrial> out;
  for (const Integer& n : moduli) {
    for (std::size_t t = 0; t < repeats; ++t) {
      std::size_t hits = 0;
      for (std::size_t s = 0; s < samples; ++s) {
        if (is_invertible(random_matrix(dim, n, rng))) ++hits;
      }
      out.push_back({n, t + 1, samples, hits});
    }
  }
  return out;
}

void write_invertibility_csv(std::ostream& out,
                             std::span<const InvertibilityTrial> rows) {
  out << "modulus,trial,samples,invertible\n";
  for (const InvertibilityTrial& r : rows) {
    out << to_decimal(r.modulus) << ',' << r.trial << ',' << r.samples << ','
        << r.invertible << '\n';
  }
}

ExhaustiveCount exhaustive_invertible_count(std::size_t dim, const Integer& modulus) {
  Integer total;
  mpz_pow_ui(total.get_mpz_t(), modulus.get_mpz_t(), dim * dim);
  if (total > 50'000'000) {
    throw InvalidArgumentError("exhaustive enumeration of " + to_decimal(total) +
                               " matrices refused");
  }
  std::vector<Integer> entries(dim * dim, 0);
  Integer hits = 0;
  while (true) {
    if (is_invertible(RingMatrix::from_entries(dim, modulus, entries))) ++hits;
    // Odometer increment.
    std::size_t pos = 0;
    while (pos < entries.size()) {
      if (++entries[pos] < modulus) break;
      entries[pos] = 0;
      ++pos;
    }
    if (pos == entries.size()) break;
  }
  return {hits, total};
}

double invertible_probability(std::size_t dim, const Integer& modulus) {
  if (modulus < 2) throw InvalidArgumentError("modulus must be at least 2");
  Integer rest = modulus;
  double prob = 1.0;
  auto account = [&](double p) {
    for (std::size_t i = 1; i <= dim; ++i) prob *= 1.0 - std::pow(p, -static_cast<double>(i));
  };
  for (Integer p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    account(p.get_d());
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1) account(rest.get_d());
  return prob;
}

double brute_force_cost(std::size_t b, std::size_t l) {
  if (b < 1 || l < 1) throw InvalidArgumentError("b and l must be positive");
  const double l2 = static_cast<double>(l * l);
  return std::log2(l2) + static_cast<double>(b) * l2;
}

std::optional<int> reported_brute_force_exponent(std::size_t b) {
  switch (b) {
    case 10:
      return 172;
    case 16:
      return 268;
    case 18:
      return 300;
    default:
      return std::nullopt;
  }
}

CollisionEstimate kpa_collision_estimate(const KeyTuple& key, const Integer& x,
                                         std::size_t trials, RandomSource& rng) {
  CollisionEstimate out{0, trials, std::nullopt};
  Ciphertext target(RingMatrix(key.dim(), key.n()));
  if (key.dim() == 4) {
    const Enc4Randomness rnd = sample_enc4_randomness(x, key.modulus(), rng);
    out.target_r = rnd.r;
    target = enc4(x, key, rnd);
  } else {
    target = encrypt(x, key, rng);
  }
  for (std::size_t t = 0; t < trials; ++t) {
    if (encrypt(x, key, rng) == target) ++out.hits;
  }
  return out;
}

double nominal_collision_probability(const RingModulus& modulus) {
  return 1.0 / (modulus.n().get_d() * std::pow(3.0, static_cast<double>(modulus.m())));
}

double exact_collision_probability(const RingModulus& modulus) {
  return 1.0 /
         ((modulus.n().get_d() - 1.0) * std::pow(3.0, static_cast<double>(modulus.m())));
}

double conditional_collision_probability(const RingModulus& modulus, const Integer& x,
                                         const Integer& target_r) {
  double p = 1.0 / (modulus.n().get_d() - 1.0);
  for (const Integer& f : modulus.f()) {
    if (mod(target_r - x, f) != 0) p /= 3.0;
  }
  return p;
}

RingMatrix lemma6_witness(std::size_t i, const RingModulus& modulus) {
  if (i < 1 || i > modulus.m()) {
    throw InvalidArgumentError("factor index must lie in [1, m]");
  }
  if (!modulus.has_pairs()) {
    throw InvalidArgumentError("the witness needs the p_i and q_i of the modulus");
  }
  static constexpr int kSwap[4] = {1, 0, 3, 2};
  RingMatrix out(4, modulus.n());
  std::vector<Congruence> residues;
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      const Integer perm = (kSwap[r] == static_cast<int>(c)) ? 1 : 0;
      const Integer ident = (r == c) ? 1 : 0;
      residues.clear();
      for (std::size_t j = 1; j <= modulus.m(); ++j) {
        if (j == i) {
          residues.push_back({perm, modulus.p()[j - 1]});
          residues.push_back({ident, modulus.q()[j - 1]});
        } else {
          residues.push_back({ident, modulus.f()[j - 1]});
        }
      }
      out.set(r, c, crt_solve(residues));
    }
  }
  return out;
}

Lemma7Result lemma7_check(const Integer& x, const KeyTuple& key,
                          const Enc4Randomness& rnd, std::size_t i) {
  const RingMatrix ki = lemma6_witness(i, key.modulus());
  const std::vector<Integer> diag = enc4_diagonal(x, key.modulus(), rnd);
  const RingMatrix y_mat = ki * RingMatrix::diagonal(diag, key.n()) * ki;

  Lemma7Result out;
  out.y = y_mat.at(0, 0);
  out.diagonal = y_mat.diagonal_entries();
  const KeyTuple related =
      KeyTuple::from_matrices(key.modulus(), ki * key.k(), key.k_inv() * ki);
  out.holds = y_mat.is_diagonal() && dec(enc4(x, key, rnd), related) == out.y;
  return out;
}

RingMatrix strawman_e1(const Integer& x, const Integer& r, const Integer& n) {
  const Integer d[2] = {mod(x, n), mod(r, n)};
  return RingMatrix::diagonal(d, n);
}

RingMatrix strawman_e2(const Integer& x, const Integer& r, const RingMatrix& k,
                       const RingMatrix& k_inv) {
  if (k.dim() != 2) throw InvalidArgumentError("the strawman key is 2x2");
  return k_inv * strawman_e1(x, r, k.modulus()) * k;
}

namespace {

// s, t, g with s*v0 + t*v1 = g = gcd(v0, v1). The row is usable when g is a
// unit mod N, even if neither entry is.
struct Bezout {
  Integer s, t, g;
};

Bezout bezout(const std::vector<Integer>& v) {
  Bezout b;
  mpz_gcdext(b.g.get_mpz_t(), b.s.get_mpz_t(), b.t.get_mpz_t(), v[0].get_mpz_t(),
             v[1].get_mpz_t());
  return b;
}

bool unimodular(const std::vector<Integer>& v, const Integer& n) {
  return gcd(bezout(v).g, n) == 1;
}

// v * C == x * v (mod N)?
bool is_left_eigen(const std::vector<Integer>& v, const PlainCipherPair& pair) {
  const Integer& n = pair.c.modulus();
  for (std::size_t col = 0; col < 2; ++col) {
    const Integer lhs = v[0] * pair.c.at(0, col) + v[1] * pair.c.at(1, col);
    if (mod(lhs - pair.x * v[col], n) != 0) return false;
  }
  return true;
}

}  // namespace

Integer StrawmanRecovery::decrypt(const RingMatrix& c) const {
  if (!eigen_row) throw InvalidArgumentError("nothing was recovered");
  const Integer& n = c.modulus();
  const std::vector<Integer>& v = *eigen_row;
  // v C = x v, so x g = s (v C)_0 + t (v C)_1.
  const Bezout b = bezout(v);
  const Integer vc0 = v[0] * c.at(0, 0) + v[1] * c.at(1, 0);
  const Integer vc1 = v[0] * c.at(0, 1) + v[1] * c.at(1, 1);
  return mod((b.s * vc0 + b.t * vc1) * mod_inverse(mod(b.g, n), n), n);
}

StrawmanRecovery strawman_cpa_attack(std::span<const PlainCipherPair> pairs) {
  StrawmanRecovery out;
  if (pairs.empty()) return out;
  const std::size_t dim = pairs.front().c.dim();
  const Integer n = pairs.front().c.modulus();
  for (const PlainCipherPair& pair : pairs) {
    pair.c.check_compatible(pairs.front().c);
    Integer trace = 0;
    for (std::size_t i = 0; i < dim; ++i) trace += pair.c.at(i, i);
    out.sums.push_back(mod(trace, n));
    out.products.push_back(determinant(pair.c));
  }
  if (dim != 2) {
    // trace = x + x1 + x2 + x3 and det = x * x1 * x2 * x3: no single r.
    return out;
  }
  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const Integer r = mod(out.sums[j] - pairs[j].x, n);
    if (mod(pairs[j].x * r - out.products[j], n) != 0) {
      throw InconsistentPairsError("pair " + std::to_string(j + 1) +
                                   ": x * (trace - x) differs from det");
    }
    out.r_values.push_back(r);
  }
  if (pairs.size() < 2) return out;

  // C - x I = s u w^T with s = r - x, so every combination of its columns,
  // rotated, is a multiple of the wanted row. Mix the two columns until the
  // multiple is unimodular and the row survives every pair.
  constexpr long kMaxMix = 256;
  for (const PlainCipherPair& source : pairs) {
    const Integer a = mod(source.c.at(0, 0) - source.x, n);
    const Integer b = source.c.at(0, 1);
    const Integer c = source.c.at(1, 0);
    const Integer d = mod(source.c.at(1, 1) - source.x, n);
    for (long t = -1; t < kMaxMix; ++t) {
      // t = -1 is the second column alone, t >= 0 is column 1 + t * column 2.
      const Integer w0 = t < 0 ? Integer(0) : Integer(1);
      const Integer w1 = t < 0 ? Integer(1) : Integer(t);
      std::vector<Integer> v = {mod(w0 * c + w1 * d, n), mod(-(w0 * a + w1 * b), n)};
      if (!unimodular(v, n)) continue;
      bool all = true;
      for (const PlainCipherPair& p : pairs) all = all && is_left_eigen(v, p);
      if (all) {
        out.eigen_row = std::move(v);
        out.determined = true;
        return out;
      }
    }
  }
  return out;
}

}  // namespace matfhe
