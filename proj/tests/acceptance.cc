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

// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
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
#include "test_support.h"

namespace matfhe {
namespace {

namespace t = testing;

// Collects failed checks for one criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::string out;
    const auto& parts = failures_.empty() ? notes_ : failures_;
    for (std::size_t i = 0; i < parts.size() && i < 4; ++i) {
      out += (i ? "; " : "") + parts[i];
    }
    if (parts.size() > 4) out += "; +" + std::to_string(parts.size() - 4) + " more";
    return out;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string str(const Integer& v) { return to_decimal(v); }

void criterion1(Check& c) {
  const KeyTuple key = t::single_key();
  // Factors and key through the generator, as the example injects them.
  std::vector<Integer> script = t::ints({3, 5, 7, 11});
  for (const Integer& e : t::single_printed_k_inv().entries()) script.push_back(e);
  ScriptedRandom rng(script);
  const KeyTuple generated = keygen4(2, 8, rng, BitLengthPolicy::kRelaxed);
  c.expect(generated == key, "injected keygen differs from the printed key");

  const std::vector<Integer> d = enc4_diagonal(257, key.modulus(), t::single_randomness());
  c.expect(d == t::ints({257, 291, 236, 312}), "CRT triple differs");
  const Ciphertext ct = enc4(257, generated, t::single_randomness());
  c.expect(ct.body() == t::single_cipher(), "ciphertext entries differ");
  c.expect(dec(ct, key) == 257, "dec != 257");
  c.expect(recover_diagonal(ct, key) == d, "recovered diagonal differs");
  c.note("diag (257,291,236,312), 16/16 entries, dec 257");
}

void criterion2(Check& c) {
  const KeyTuple key = t::pair_key();
  const Ciphertext c1 = t::pair_c1();
  const Ciphertext c2 = t::pair_c2();
  c.expect(dec(c1, key) == 5, "dec(C1) = " + str(dec(c1, key)));
  c.expect(dec(c2, key) == 12, "dec(C2) = " + str(dec(c2, key)));
  const Ciphertext sum = he_add(c1, c2);
  const Ciphertext prod = he_mul(c1, c2);
  c.expect(dec(sum, key) == 17, "dec(C1+C2) = " + str(dec(sum, key)));
  c.expect(recover_diagonal(sum, key) == t::ints({17, 408, 1079, 238}), "sum diagonal");
  c.expect(dec(prod, key) == 60, "dec(C1*C2) = " + str(dec(prod, key)));
  c.expect(recover_diagonal(prod, key) == t::ints({60, 440, 673, 957}), "product diagonal");
  c.expect(prod == t::pair_product(), "product matrix differs from the printed one");
  c.note("5, 12, 17 (17,408,1079,238), 60 (60,440,673,957)");
}

void criterion3(Check& c) {
  SeededRandom rng(3001);
  const KeyTuple key = keygen4(2, 16, rng);
  const auto start = std::chrono::steady_clock::now();
  std::size_t ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const Integer x = rng.below(key.n());
    if (dec(enc4(x, key, rng), key) == x) ++ok;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.expect(ok == 1000, std::to_string(ok) + "/1000 round-trips");
  c.expect(secs < 10.0, "took " + std::to_string(secs) + " s");
  c.note("1000/1000 at N=" + str(key.n()) + " in " + std::to_string(secs) + " s");
}

ExprPtr random_expr(RandomSource& rng, int depth) {
  if (depth == 0 || rng.index_below(4) == 0) {
    if (rng.index_below(5) == 0) return Expr::constant(rng.below(Integer(1000)));
    return Expr::input("x" + std::to_string(1 + rng.index_below(4)));
  }
  static const Expr::Kind ops[] = {Expr::Kind::kAdd, Expr::Kind::kSub, Expr::Kind::kMul};
  const Expr::Kind op = ops[rng.index_below(3)];
  ExprPtr l = random_expr(rng, depth - 1);
  return Expr::binary(op, std::move(l), random_expr(rng, depth - 1));
}

void criterion4(Check& c) {
  SeededRandom rng(4001);
  const KeyTuple key = keygen4(2, 16, rng);
  std::size_t ok = 0;
  for (int i = 0; i < 500; ++i) {
    const ExprPtr f = random_expr(rng, 5);
    CipherEnv env(key, rng);
    std::map<std::string, Integer> plain;
    for (int j = 1; j <= 4; ++j) {
      const std::string name = "x" + std::to_string(j);
      plain[name] = rng.below(key.n());
      env.bind(name, encrypt(plain[name], key, rng));
    }
    if (dec(eval_expr(*f, env), key) == eval_plain(*f, plain, key.n())) {
      ++ok;
    } else {
      c.expect(false, "mismatch for " + to_string(*f));
    }
  }
  c.note(std::to_string(ok) + "/500 expressions");
}

void criterion5(Check& c) {
  SeededRandom rng(5001);
  std::size_t witnesses = 0;
  for (const RingModulus& modulus : {t::toy_pairs(), generate_coprime_set(3, 16, rng)}) {
    for (std::size_t i = 1; i <= modulus.m(); ++i) {
      const RingMatrix k = lemma6_witness(i, modulus);
      c.expect(k * k == RingMatrix::identity(4, modulus.n()), "k_i^2 != I");
      static constexpr int kSwap[4] = {1, 0, 3, 2};
      for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t col = 0; col < 4; ++col) {
          const Integer e = k.at(r, col);
          const int perm = kSwap[r] == static_cast<int>(col) ? 1 : 0;
          const int ident = r == col ? 1 : 0;
          c.expect(mod(e, modulus.p()[i - 1]) == perm, "mod p_i congruence");
          c.expect(mod(e, modulus.q()[i - 1]) == ident, "mod q_i congruence");
          for (std::size_t j = 1; j <= modulus.m(); ++j) {
            if (j != i) c.expect(mod(e, modulus.f()[j - 1]) == ident, "mod f_j congruence");
          }
        }
      }
      ++witnesses;
    }
  }
  const KeyTuple key = keygen4(2, 16, rng);
  std::size_t holds = 0;
  for (int n = 0; n < 100; ++n) {
    const Integer x = rng.below(key.n());
    const Enc4Randomness rnd = sample_enc4_randomness(x, key.modulus(), rng);
    if (lemma7_check(x, key, rnd, 1 + rng.index_below(2)).holds) ++holds;
  }
  c.expect(holds == 100, std::to_string(holds) + "/100 residue triples");
  const Lemma7Result ex = lemma7_check(257, t::single_key(), t::single_randomness(), 1);
  c.expect(ex.holds && ex.y != 257, "worked-example residue check");
  c.note(std::to_string(witnesses) + " witnesses, 100/100 residue checks, worked example y=" +
         str(ex.y));
}

void criterion6(Check& c) {
  SeededRandom rng(6001);
  const KeyTuple key = keygen_for(t::toy_pairs(), 4, rng);
  const auto start = std::chrono::steady_clock::now();
  const CollisionEstimate e = kpa_collision_estimate(key, 257, 1'000'000, rng);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const double f = e.fraction();
  std::ostringstream s;
  s << e.hits << " hits / 10^6 = " << f << " (nominal "
    << nominal_collision_probability(t::toy_pairs()) << ")";
  c.expect(f >= 4.8e-5 && f <= 1.92e-4, s.str() + " outside [4.8e-5, 1.92e-4]");
  c.expect(secs < 120.0, "took " + std::to_string(secs) + " s");
  c.note(s.str());
  if (!c.ok() && e.target_r) {
    std::ostringstream why;
    why << "target r=" << str(*e.target_r) << ", r-x mod 21=" << str(mod(*e.target_r - 257, 21))
        << ", r-x mod 55=" << str(mod(*e.target_r - 257, 55))
        << ", probability given this target "
        << conditional_collision_probability(t::toy_pairs(), 257, *e.target_r);
    c.expect(false, why.str());
  }
}

void criterion7(Check& c) {
  const ExhaustiveCount ex = exhaustive_invertible_count(2, 6);
  c.expect(ex.invertible == 288 && ex.total == 1296,
           "exhaustive " + str(ex.invertible) + "/" + str(ex.total));
  SeededRandom rng(7001);
  const Integer moduli[] = {t::kToyN};
  const auto rows = invertibility_experiment(moduli, 100, 5, rng);
  std::string counts;
  std::size_t low = 0;
  for (const auto& row : rows) {
    counts += (counts.empty() ? "" : ",") + std::to_string(row.invertible);
    low += row.invertible < 60;
  }
  std::ostringstream s;
  s << "2x2 mod 6 " << str(ex.invertible) << "/" << str(ex.total) << "; 4x4 mod 1155 counts "
    << counts << " per 100 (product formula predicts "
    << 100 * invertible_probability(4, t::kToyN) << ")";
  c.expect(low == 0, s.str() + ", " + std::to_string(low) + "/5 trials below 60");
  c.note(s.str());
}

void criterion8(Check& c) {
  SeededRandom krng(8001);
  const KeySet ks = keyset_gen_for(t::toy_pairs(), 4, 3, krng);
  SeededRandom rng(8002);
  std::size_t ok = 0;
  const char* ops = "+-*";
  for (int n = 0; n < 200; ++n) {
    const std::size_t count = 1 + rng.index_below(4);
    std::vector<Integer> data;
    std::map<std::string, Integer> plain;
    for (std::size_t i = 0; i < count; ++i) {
      data.push_back(rng.below(t::kToyN));
      plain["x" + std::to_string(i + 1)] = data.back();
    }
    std::string f = "x" + std::to_string(1 + rng.index_below(count));
    for (std::size_t i = 0, len = rng.index_below(5); i < len; ++i) {
      f += ops[rng.index_below(3)];
      f += "x" + std::to_string(1 + rng.index_below(count));
    }
    const ExprPtr e = parse_expr(f);
    const ProtocolRun run = run_protocol(*e, data, ks, rng);
    const bool good = run.result == eval_plain(*e, plain, t::kToyN) &&
                      audit_transcript(run.transcript, ks).empty();
    c.expect(good, "run failed for " + f);
    if (good) ++ok;
  }

  const std::vector<Integer> data = t::ints({5, 12});
  SeededRandom a(8003);
  SeededRandom b(8003);
  const ProtocolRun run = run_protocol(*parse_expr("x1+x2"), data, ks, a);
  c.expect(run.result == 17, "x1+x2 over 5,12");
  c.expect(serialize_transcript(run.transcript) ==
               serialize_transcript(run_protocol(*parse_expr("x1+x2"), data, ks, b).transcript),
           "transcript not deterministic");

  std::size_t detected = 0;
  Transcript leak = run.transcript;
  for (ProtocolMessage& m : leak.messages) {
    if (auto* op = std::get_if<MaskedOperand>(&m.payload)) {
      op->operand = Ciphertext(ks.components()[1].k());
      break;
    }
  }
  detected += !audit_transcript(leak, ks).empty();
  Transcript doubled = run.transcript;
  doubled.messages.push_back(doubled.messages.back());
  detected += !audit_transcript(doubled, ks).empty();
  Transcript rerouted = run.transcript;
  for (ProtocolMessage& m : rerouted.messages) {
    if (std::holds_alternative<EvalResult>(m.payload)) m.to = Role::kComputationCenter;
  }
  detected += !audit_transcript(rerouted, ks).empty();
  c.expect(detected == 3, std::to_string(detected) + "/3 forgeries detected");
  c.note(std::to_string(ok) + "/200 runs clean, 3/3 forgeries detected, deterministic");
}

void criterion9(Check& c) {
  SeededRandom rng(9001);
  const RingMatrix k = random_invertible(2, t::kToyN, rng);
  const RingMatrix k_inv = inverse(k);
  std::vector<PlainCipherPair> pairs;
  std::vector<Integer> rs;
  for (long x : {100L, 200L}) {
    Integer r;
    do r = rng.below(t::kToyN);
    while (r == x);
    rs.push_back(r);
    pairs.push_back({x, strawman_e2(x, r, k, k_inv)});
  }
  const StrawmanRecovery rec = strawman_cpa_attack(pairs);
  for (std::size_t j = 0; j < 2; ++j) {
    c.expect(rec.sums[j] == mod(pairs[j].x + rs[j], t::kToyN), "trace mismatch");
    c.expect(rec.products[j] == mod(pairs[j].x * rs[j], t::kToyN), "det mismatch");
    c.expect(rec.r_values.size() == 2 && rec.r_values[j] == rs[j], "r mismatch");
  }

  const KeyTuple key = keygen_for(t::toy_pairs(), 4, rng);
  std::vector<PlainCipherPair> full;
  for (long x : {100L, 200L}) full.push_back({x, enc4(x, key, rng).body()});
  const StrawmanRecovery none = strawman_cpa_attack(full);
  c.expect(!none.determined && none.r_values.empty(), "dim-4 ciphertexts were determined");
  c.note("dim 2: (x+r, xr) recovered for both pairs; dim 4: undetermined");
}

void criterion10(Check& c) {
  SeededRandom rng(10001);
  std::ostringstream table;
  for (std::size_t lambda : {12u, 20u}) {
    BenchOptions opts;
    opts.lambda = lambda;
    const BenchReport rep = run_bench(opts, rng);
    write_bench_table(table, rep);
    const double add = rep.median_ns("add");
    const double mul = rep.median_ns("mul");
    c.expect(add > 0 && mul > 0, "missing bench rows");
    c.expect(mul >= 10 * add, "lambda=" + std::to_string(lambda) + ": mul/add = " +
                                  std::to_string(mul / add));
    std::ostringstream s;
    s << "lambda=" << lambda << " mul/add=" << mul / add;
    c.note(s.str());
  }
  std::cout << table.str();
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

void criterion11(Check& c) {
  std::istringstream in(read_file(t::fixture_path("SHA256SUMS")));
  std::string hash, name;
  std::size_t files = 0;
  while (in >> hash >> name) {
    ++files;
    const std::string text = read_file(t::fixture_path(name));
    c.expect(sha256_hex(text) == hash, name + ": hash mismatch");
    const bool is_key = name.ends_with(".key");
    const std::string again = is_key ? serialize_key(parse_key(text))
                                     : serialize_ciphertext(parse_ciphertext(text));
    c.expect(again == text, name + ": re-serialization differs");
  }
  c.expect(files == 5, std::to_string(files) + " fixtures listed");
  const KeyTuple k41 = parse_key(read_file(t::fixture_path("single.key")));
  c.expect(dec(parse_ciphertext(read_file(t::fixture_path("single.ct"))), k41) == 257,
           "fixture 4.1 does not decrypt to 257");
  c.note(std::to_string(files) + " fixtures parse, round-trip and hash-match");
}

}  // namespace
}  // namespace matfhe

int main() {
  using matfhe::Check;
  const std::vector<std::pair<int, std::function<void(Check&)>>> criteria = {
      {1, matfhe::criterion1}, {2, matfhe::criterion2},   {3, matfhe::criterion3},
      {4, matfhe::criterion4}, {5, matfhe::criterion5},   {6, matfhe::criterion6},
      {7, matfhe::criterion7}, {8, matfhe::criterion8},   {9, matfhe::criterion9},
      {10, matfhe::criterion10}, {11, matfhe::criterion11},
  };
  int failed = 0;
  for (const auto& [n, run] : criteria) {
    Check c;
    try {
      run(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << n << ": " << c.summary()
              << std::endl;
    failed += !c.ok();
  }
  std::cout << (11 - failed) << "/11 criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
