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

#include "matfhe/bench.h"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include "matfhe/cipher.h"
#include "matfhe/errors.h"
#include "matfhe/eval.h"
#include "matfhe/keygen.h"

namespace matfhe {
namespace {

using Clock = std::chrono::steady_clock;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <class F>
double time_ns(F&& f) {
  const auto start = Clock::now();
  f();
  return std::chrono::duration<double, std::nano>(Clock::now() - start).count();
}

// Keeps the optimizer from discarding a computed value.
volatile std::uint64_t g_sink;
void consume(const Ciphertext& c) { g_sink = c.body().at(0, 0).get_ui(); }

}  // namespace

double BenchReport::median_ns(const std::string& op) const {
  for (const BenchRow& r : rows) {
    if (r.op == op) return r.median_ns;
  }
  throw InvalidArgumentError("no benchmark row for '" + op + "'");
}

BenchReport run_bench(const BenchOptions& options, RandomSource& rng) {
  if (options.repeats == 0 || options.add_batch == 0 || options.mul_batch == 0) {
    throw InvalidArgumentError("benchmark counts must be positive");
  }
  BenchReport report{options.m, options.lambda, 0, {}};

  std::vector<double> keygen_ns, enc_ns, dec_ns, add_ns, add_copy_ns, mul_ns;
  const KeyTuple key = keygen4(options.m, options.lambda, rng);
  report.n_bits = bit_length(key.n());

  for (std::size_t i = 0; i < options.repeats; ++i) {
    keygen_ns.push_back(time_ns([&] { (void)keygen4(options.m, options.lambda, rng); }));
  }

  const Integer x = rng.below(key.n());
  std::vector<Ciphertext> cts;
  for (std::size_t i = 0; i < options.repeats; ++i) {
    enc_ns.push_back(time_ns([&] { cts.push_back(enc4(x, key, rng)); }));
  }
  for (std::size_t i = 0; i < options.repeats; ++i) {
    dec_ns.push_back(time_ns([&] { g_sink = dec(cts[i], key).get_ui(); }));
  }

  const Ciphertext a = enc4(rng.below(key.n()), key, rng);
  const Ciphertext b = enc4(rng.below(key.n()), key, rng);
  // Interleaved so that add and mul samples see the same machine state.
  for (std::size_t i = 0; i < options.repeats; ++i) {
    Ciphertext acc = a;
    double t = time_ns([&] {
      for (std::size_t j = 0; j < options.add_batch; ++j) he_add_assign(acc, b);
    });
    consume(acc);
    add_ns.push_back(t / static_cast<double>(options.add_batch));

    acc = a;
    t = time_ns([&] {
      for (std::size_t j = 0; j < options.add_batch; ++j) acc = he_add(acc, b);
    });
    consume(acc);
    add_copy_ns.push_back(t / static_cast<double>(options.add_batch));

    acc = a;
    t = time_ns([&] {
      for (std::size_t j = 0; j < options.mul_batch; ++j) acc = he_mul(acc, b);
    });
    consume(acc);
    mul_ns.push_back(t / static_cast<double>(options.mul_batch));
  }

  report.rows = {
      {"keygen", median(keygen_ns), keygen_ns.size()},
      {"enc", median(enc_ns), enc_ns.size()},
      {"dec", median(dec_ns), dec_ns.size()},
      {"add", median(add_ns), add_ns.size()},
      {"add_copy", median(add_copy_ns), add_copy_ns.size()},
      {"mul", median(mul_ns), mul_ns.size()},
  };
  return report;
}

void write_bench_table(std::ostream& out, const BenchReport& report) {
  char line[128];
  std::snprintf(line, sizeof line, "m=%zu lambda=%zu N bits=%zu\n", report.m,
                report.lambda, report.n_bits);
  out << line;
  out << "op        median (ns/op)   samples\n";
  for (const BenchRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%-8s  %14.1f   %7zu\n", r.op.c_str(), r.median_ns,
                  r.samples);
    out << line;
  }
  std::snprintf(line, sizeof line, "mul/add ratio: %.1f (in place), %.1f (allocating)\n",
                report.median_ns("mul") / report.median_ns("add"),
                report.median_ns("mul") / report.median_ns("add_copy"));
  out << line;
}

}  // namespace matfhe
