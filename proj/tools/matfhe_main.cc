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

// matfhe command-line front end.
//
// Exit codes: 0 ok, 1 other failure, 2 bad arguments or parameters,
// 3 generation failure, 4 malformed or incompatible file, 5 value >= N,
// 6 formula syntax error, 7 unbound formula input.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "matfhe/analysis.h"
#include "matfhe/bench.h"
#include "matfhe/cipher.h"
#include "matfhe/errors.h"
#include "matfhe/eval.h"
#include "matfhe/format.h"
#include "matfhe/keygen.h"
#include "matfhe/protocol.h"

namespace matfhe {
namespace {

enum Exit {
  kOk = 0,
  kFailure = 1,
  kBadArgs = 2,
  kGeneration = 3,
  kBadFile = 4,
  kRange = 5,
  kSyntax = 6,
  kUnbound = 7,
};

// Thrown for argument problems found after CLI11 parsing.
class UsageError : public Error {
 public:
  using Error::Error;
};

class ValueRangeError : public Error {
 public:
  using Error::Error;
};

std::uint64_t seed_or_random(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

Integer parse_value(const std::string& text, const std::string& what) {
  const std::optional<Integer> v = parse_decimal(text);
  if (!v) throw UsageError(what + " must be a non-negative decimal integer: '" + text + "'");
  return *v;
}

std::vector<Integer> parse_list(const std::string& text, const std::string& what) {
  std::vector<Integer> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_value(item, what));
  if (out.empty() || text.back() == ',') throw UsageError(what + " list is malformed");
  return out;
}

KeyTuple load_key(const std::string& path) {
  try {
    return parse_key(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

Ciphertext load_ciphertext(const std::string& path) {
  try {
    return parse_ciphertext(read_file(path));
  } catch (const FormatError& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void check_shape(const Ciphertext& c, const KeyTuple& key, const std::string& path) {
  if (c.modulus() != key.n() || c.dim() != key.dim()) {
    throw FormatError(path + ": ciphertext (N=" + to_decimal(c.modulus()) +
                      ", dim=" + std::to_string(c.dim()) + ") does not match the key");
  }
}

struct Options {
  std::size_t m = 2;
  std::size_t lambda = 16;
  std::size_t dim = 4;
  std::size_t l = 3;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string key;
  std::string in;
  std::string value;
  std::string expr;
  std::vector<std::string> inputs;
  std::string data;
  std::string transcript = "transcript.log";
  std::string experiment;
  std::string moduli = "15,1155,15015,255255";
  std::size_t samples = 100;
  std::size_t repeats = 5;
  std::size_t trials = 1'000'000;
  std::string x = "257";
  std::size_t count = 100;
  std::size_t bench_lambda = 12;
  std::size_t bench_repeats = 15;
};

int cmd_keygen(const Options& o) {
  SeededRandom rng(seed_or_random(o.seed));
  const KeyTuple key = keygen(o.dim, o.m, o.lambda, rng);
  write_file(o.out, serialize_key(key));
  std::cerr << "wrote key with N=" << to_decimal(key.n()) << " to " << o.out << "\n";
  return kOk;
}

int cmd_keyset(const Options& o) {
  SeededRandom rng(seed_or_random(o.seed));
  const KeySet ks = keyset_gen(o.dim, o.l, o.m, o.lambda, rng);
  write_file(o.out, serialize_keyset(ks));
  std::cerr << "wrote " << ks.size() << "-component key set to " << o.out << "\n";
  return kOk;
}

int cmd_verify(const Options& o) {
  // parse_key already rejects a wrong inverse; recheck for the report.
  const KeyTuple key = load_key(o.key);
  const RingMatrix id = RingMatrix::identity(key.dim(), key.n());
  const bool ok = key.k() * key.k_inv() == id && key.k_inv() * key.k() == id;
  std::cout << (ok ? "ok" : "bad") << ": N=" << to_decimal(key.n()) << " dim=" << key.dim()
            << " m=" << key.modulus().m() << "\n";
  return ok ? kOk : kBadFile;
}

int cmd_encrypt(const Options& o) {
  const KeyTuple key = load_key(o.key);
  const Integer x = parse_value(o.value, "--value");
  if (x >= key.n()) {
    throw ValueRangeError("value " + o.value + " is not below N=" + to_decimal(key.n()));
  }
  SeededRandom rng(seed_or_random(o.seed));
  write_file(o.out, serialize_ciphertext(encrypt(x, key, rng)));
  return kOk;
}

int cmd_decrypt(const Options& o) {
  const KeyTuple key = load_key(o.key);
  const Ciphertext c = load_ciphertext(o.in);
  check_shape(c, key, o.in);
  std::cout << to_decimal(dec(c, key)) << "\n";
  return kOk;
}

int cmd_eval(const Options& o) {
  const KeyTuple key = load_key(o.key);
  const ExprPtr f = parse_expr(o.expr);
  SeededRandom rng(seed_or_random(o.seed));
  CipherEnv env(key, rng);
  for (const std::string& binding : o.inputs) {
    const std::size_t eq = binding.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == binding.size()) {
      throw UsageError("--input expects name=path, got '" + binding + "'");
    }
    const std::string path = binding.substr(eq + 1);
    Ciphertext c = load_ciphertext(path);
    check_shape(c, key, path);
    env.bind(binding.substr(0, eq), std::move(c));
  }
  write_file(o.out, serialize_ciphertext(eval_expr(*f, env)));
  return kOk;
}

int cmd_protocol(const Options& o) {
  const ExprPtr f = parse_expr(o.expr);
  const std::vector<Integer> data = parse_list(o.data, "--data");
  SeededRandom rng(seed_or_random(o.seed));
  const KeySet ks = keyset_gen(o.dim, 3, o.m, o.lambda, rng);
  for (const Integer& x : data) {
    if (x >= ks.modulus().n()) {
      throw ValueRangeError("data value " + to_decimal(x) + " is not below N=" +
                            to_decimal(ks.modulus().n()));
    }
  }
  const ProtocolRun run = run_protocol(*f, data, ks, rng);
  const std::vector<Violation> violations = audit_transcript(run.transcript, ks);
  write_file(o.transcript, serialize_transcript(run.transcript));
  std::cout << to_decimal(run.result) << "\n";
  std::cerr << run.transcript.messages.size() << " messages, " << violations.size()
            << " audit violations; transcript in " << o.transcript << "\n";
  for (const Violation& v : violations) std::cerr << "violation: " << v.description << "\n";
  return violations.empty() ? kOk : kFailure;
}

int cmd_analyze(const Options& o) {
  SeededRandom rng(seed_or_random(o.seed));
  if (o.experiment == "invertibility") {
    const std::vector<Integer> moduli = parse_list(o.moduli, "--moduli");
    const auto rows = invertibility_experiment(moduli, o.samples, o.repeats, rng, o.dim);
    write_invertibility_csv(std::cout, rows);
  } else if (o.experiment == "kpa") {
    const RingModulus modulus = toy_modulus(o.m);
    const KeyTuple key = keygen_for(modulus, 4, rng);
    const Integer x = parse_value(o.x, "--x");
    if (x >= modulus.n()) throw ValueRangeError("--x is not below N");
    const CollisionEstimate e = kpa_collision_estimate(key, x, o.trials, rng);
    std::cout << "m,N,trials,hits,fraction,nominal,exact\n"
              << o.m << ',' << to_decimal(modulus.n()) << ',' << e.trials << ','
              << e.hits << ',' << e.fraction() << ','
              << nominal_collision_probability(modulus) << ','
              << exact_collision_probability(modulus) << "\n";
  } else if (o.experiment == "bruteforce") {
    std::cout << "b,l,formula_log2,reported_log2\n";
    for (std::size_t b : {10u, 12u, 16u, 18u, 20u, 32u}) {
      for (std::size_t l : {4u, 8u}) {
        const auto reported = l == 4 ? reported_brute_force_exponent(b) : std::nullopt;
        std::cout << b << ',' << l << ',' << brute_force_cost(b, l) << ','
                  << (reported ? std::to_string(*reported) : "") << "\n";
      }
    }
  } else if (o.experiment == "lemma7") {
    const RingModulus modulus = toy_modulus(o.m);
    const KeyTuple key = keygen_for(modulus, 4, rng);
    std::cout << "x,r,i,y,holds\n";
    for (std::size_t t = 0; t < o.count; ++t) {
      const Integer x = rng.below(modulus.n());
      const Enc4Randomness rnd = sample_enc4_randomness(x, modulus, rng);
      const std::size_t i = 1 + rng.index_below(modulus.m());
      const Lemma7Result r = lemma7_check(x, key, rnd, i);
      std::cout << to_decimal(x) << ',' << to_decimal(rnd.r) << ',' << i << ','
                << to_decimal(r.y) << ',' << (r.holds ? "true" : "false") << "\n";
    }
  } else {
    throw UsageError("unknown experiment '" + o.experiment +
                     "' (invertibility, kpa, bruteforce, lemma7)");
  }
  return kOk;
}

int cmd_bench(const Options& o) {
  SeededRandom rng(seed_or_random(o.seed));
  BenchOptions opts;
  opts.m = o.m;
  opts.lambda = o.bench_lambda;
  opts.repeats = o.bench_repeats;
  write_bench_table(std::cout, run_bench(opts, rng));
  return kOk;
}

int run(int argc, char** argv) {
  CLI::App app{"Matrix-based homomorphic encryption over Z_N"};
  app.require_subcommand(1);
  Options o;

  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key file");
  keygen_cmd->add_option("--m", o.m, "Number of factor pairs")->capture_default_str();
  keygen_cmd->add_option("--lambda", o.lambda, "Security parameter (even)")
      ->capture_default_str();
  keygen_cmd->add_option("--dim", o.dim, "Key dimension (4 or 8)")->capture_default_str();
  keygen_cmd->add_option("--out", o.out, "Output key file")->required();
  keygen_cmd->add_option("--seed", o.seed, "Deterministic seed");

  auto* keyset_cmd = app.add_subcommand("keyset-gen", "Generate a matching key set");
  keyset_cmd->add_option("--l", o.l, "Number of components")->capture_default_str();
  keyset_cmd->add_option("--m", o.m)->capture_default_str();
  keyset_cmd->add_option("--lambda", o.lambda)->capture_default_str();
  keyset_cmd->add_option("--dim", o.dim)->capture_default_str();
  keyset_cmd->add_option("--out", o.out)->required();
  keyset_cmd->add_option("--seed", o.seed);

  auto* verify_cmd = app.add_subcommand("verify", "Check k * k^-1 = I for a key file");
  verify_cmd->add_option("--key", o.key)->required();

  auto* enc_cmd = app.add_subcommand("encrypt", "Encrypt a value");
  enc_cmd->add_option("--key", o.key)->required();
  enc_cmd->add_option("--value", o.value)->required();
  enc_cmd->add_option("--out", o.out)->required();
  enc_cmd->add_option("--seed", o.seed);

  auto* dec_cmd = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  dec_cmd->add_option("--key", o.key)->required();
  dec_cmd->add_option("--in", o.in)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula over ciphertext files");
  eval_cmd->add_option("--key", o.key, "Key (used to encrypt formula constants)")->required();
  eval_cmd->add_option("--expr", o.expr)->required();
  eval_cmd->add_option("--input", o.inputs, "name=ciphertext-file")->take_all();
  eval_cmd->add_option("--out", o.out)->required();
  eval_cmd->add_option("--seed", o.seed);

  auto* proto_cmd = app.add_subcommand("protocol-demo", "Simulate the delegation protocol");
  proto_cmd->add_option("--f", o.expr, "Formula over x1..xn")->required();
  proto_cmd->add_option("--data", o.data, "Comma-separated x1,x2,...")->required();
  proto_cmd->add_option("--m", o.m)->capture_default_str();
  proto_cmd->add_option("--lambda", o.lambda)->capture_default_str();
  proto_cmd->add_option("--transcript", o.transcript)->capture_default_str();
  proto_cmd->add_option("--seed", o.seed);

  auto* analyze_cmd = app.add_subcommand("analyze", "Run an experiment, CSV on stdout");
  analyze_cmd->add_option("experiment", o.experiment, "invertibility|kpa|bruteforce|lemma7")
      ->required();
  analyze_cmd->add_option("--m", o.m)->capture_default_str();
  analyze_cmd->add_option("--moduli", o.moduli)->capture_default_str();
  analyze_cmd->add_option("--samples", o.samples)->capture_default_str();
  analyze_cmd->add_option("--repeats", o.repeats)->capture_default_str();
  analyze_cmd->add_option("--dim", o.dim)->capture_default_str();
  analyze_cmd->add_option("--trials", o.trials)->capture_default_str();
  analyze_cmd->add_option("--x", o.x)->capture_default_str();
  analyze_cmd->add_option("--count", o.count)->capture_default_str();
  analyze_cmd->add_option("--seed", o.seed);

  auto* bench_cmd = app.add_subcommand("bench", "Median timings of the scheme operations");
  bench_cmd->add_option("--m", o.m)->capture_default_str();
  bench_cmd->add_option("--lambda", o.bench_lambda)->capture_default_str();
  bench_cmd->add_option("--repeats", o.bench_repeats)->capture_default_str();
  bench_cmd->add_option("--seed", o.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadArgs;
  }

  try {
    if (keygen_cmd->parsed()) return cmd_keygen(o);
    if (keyset_cmd->parsed()) return cmd_keyset(o);
    if (verify_cmd->parsed()) return cmd_verify(o);
    if (enc_cmd->parsed()) return cmd_encrypt(o);
    if (dec_cmd->parsed()) return cmd_decrypt(o);
    if (eval_cmd->parsed()) return cmd_eval(o);
    if (proto_cmd->parsed()) return cmd_protocol(o);
    if (analyze_cmd->parsed()) return cmd_analyze(o);
    if (bench_cmd->parsed()) return cmd_bench(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSyntax;
  } catch (const UnboundInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUnbound;
  } catch (const ValueRangeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRange;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadFile;
  } catch (const MismatchError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadFile;
  } catch (const ResourceExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kGeneration;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const InvalidArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kBadArgs;
}

}  // namespace
}  // namespace matfhe

int main(int argc, char** argv) { return matfhe::run(argc, argv); }
