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

#ifndef MATFHE_RANDOM_H_
#define MATFHE_RANDOM_H_

#include <cstddef>
#include <cstdint>
#include <deque>
#include <initializer_list>
#include <vector>

#include "matfhe/integer.h"

namespace matfhe {

// Source of randomness threaded explicitly through every sampling routine.
// Not thread-safe; give each thread its own instance.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform integer in [0, bound). bound must be positive.
  virtual Integer below(const Integer& bound) = 0;

  // Uniform odd integer with exactly `bits` bits (top bit set).
  virtual Integer odd_with_bits(std::size_t bits) = 0;

  std::size_t index_below(std::size_t bound);
};

// Mersenne-twister backed source; identical seeds give identical streams.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed);

  Integer below(const Integer& bound) override;
  Integer odd_with_bits(std::size_t bits) override;

 private:
  gmp_randclass state_;
};

// Replays a fixed list of values, used to pin down the worked examples.
// Every request consumes the next value verbatim; below() rejects values
// that are not under the bound. Throws ResourceExhaustedError once the
// script runs dry, unless constructed as cyclic.
class ScriptedRandom final : public RandomSource {
 public:
  explicit ScriptedRandom(std::vector<Integer> values, bool cyclic = false);
  ScriptedRandom(std::initializer_list<long> values, bool cyclic = false);

  Integer below(const Integer& bound) override;
  Integer odd_with_bits(std::size_t bits) override;

  std::size_t consumed() const { return consumed_; }
  std::size_t remaining() const;

 private:
  Integer next();

  std::vector<Integer> values_;
  std::size_t cursor_ = 0;
  std::size_t consumed_ = 0;
  bool cyclic_;
};

}  // namespace matfhe

#endif  // MATFHE_RANDOM_H_
