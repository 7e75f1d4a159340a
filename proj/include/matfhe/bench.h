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

#ifndef MATFHE_BENCH_H_
#define MATFHE_BENCH_H_

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "matfhe/random.h"

namespace matfhe {

struct BenchOptions {
  std::size_t m = 2;
  std::size_t lambda = 12;
  std::size_t repeats = 31;      // samples per median
  std::size_t add_batch = 10000;  // homomorphic additions per sample
  std::size_t mul_batch = 2000;   // homomorphic multiplications per sample
};

struct BenchRow {
  std::string op;
  double median_ns;  // per operation
  std::size_t samples;
};

struct BenchReport {
  std::size_t m;
  std::size_t lambda;
  std::size_t n_bits;
  std::vector<BenchRow> rows;  // keygen, enc, dec, add, add_copy, mul

  double median_ns(const std::string& op) const;
};

// Times key generation, encryption and decryption one call at a time and
// homomorphic add/mul in batches of chained operations (each result feeds
// the next), reporting per-operation medians. "add" accumulates in place
// with he_add_assign; "add_copy" is he_add returning a fresh ciphertext.
BenchReport run_bench(const BenchOptions& options, RandomSource& rng);

void write_bench_table(std::ostream& out, const BenchReport& report);

}  // namespace matfhe

#endif  // MATFHE_BENCH_H_
