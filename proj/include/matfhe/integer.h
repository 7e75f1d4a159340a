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

#ifndef MATFHE_INTEGER_H_
#define MATFHE_INTEGER_H_

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace matfhe {

// Arbitrary-precision integer used for every residue, modulus and factor.
using Integer = mpz_class;

inline Integer make_integer(std::uint64_t v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

// Non-negative remainder of a modulo n (n > 0).
inline Integer mod(const Integer& a, const Integer& n) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), n.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline std::size_t bit_length(const Integer& a) {
  if (a == 0) return 0;
  return mpz_sizeinbase(a.get_mpz_t(), 2);
}

inline std::string to_decimal(const Integer& a) { return a.get_str(10); }

// Parses a canonical non-negative decimal: digits only, no sign, no
// leading zeros except for "0" itself.
std::optional<Integer> parse_decimal(std::string_view text);

}  // namespace matfhe

#endif  // MATFHE_INTEGER_H_
