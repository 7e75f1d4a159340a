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

#include "matfhe/random.h"

#include <utility>

#include "matfhe/errors.h"

namespace matfhe {

std::size_t RandomSource::index_below(std::size_t bound) {
  return below(make_integer(bound)).get_ui();
}

SeededRandom::SeededRandom(std::uint64_t seed) : state_(gmp_randinit_mt) {
  state_.seed(make_integer(seed));
}

Integer SeededRandom::below(const Integer& bound) {
  if (bound <= 0) throw InvalidArgumentError("random bound must be positive");
  return state_.get_z_range(bound);
}

Integer SeededRandom::odd_with_bits(std::size_t bits) {
  if (bits < 2) throw InvalidArgumentError("odd_with_bits needs bits >= 2");
  // Top bit and bottom bit fixed, the bits - 2 in between uniform.
  Integer middle = state_.get_z_bits(bits - 2);
  Integer top = Integer(1) << (bits - 1);
  return top + (middle << 1) + 1;
}

ScriptedRandom::ScriptedRandom(std::vector<Integer> values, bool cyclic)
    : values_(std::move(values)), cyclic_(cyclic) {}

ScriptedRandom::ScriptedRandom(std::initializer_list<long> values, bool cyclic)
    : cyclic_(cyclic) {
  values_.reserve(values.size());
  for (long v : values) values_.emplace_back(v);
}

std::size_t ScriptedRandom::remaining() const {
  return values_.size() - cursor_;
}

Integer ScriptedRandom::next() {
  if (cursor_ == values_.size()) {
    if (!cyclic_ || values_.empty()) {
      throw ResourceExhaustedError("scripted random stream exhausted");
    }
    cursor_ = 0;
  }
  ++consumed_;
  return values_[cursor_++];
}

Integer ScriptedRandom::below(const Integer& bound) {
  Integer v = next();
  if (v < 0 || v >= bound) {
    throw InvalidArgumentError("scripted value " + to_decimal(v) +
                               " not below " + to_decimal(bound));
  }
  return v;
}

Integer ScriptedRandom::odd_with_bits(std::size_t /*bits*/) { return next(); }

}  // namespace matfhe
