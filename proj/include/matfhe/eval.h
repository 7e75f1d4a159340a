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

#ifndef MATFHE_EVAL_H_
#define MATFHE_EVAL_H_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "matfhe/cipher.h"
#include "matfhe/keygen.h"
#include "matfhe/random.h"

namespace matfhe {

// Homomorphic arithmetic. Operands must share dimension and modulus; the
// result is again one dim x dim matrix, whatever the circuit depth.
Ciphertext he_add(const Ciphertext& a, const Ciphertext& b);
Ciphertext he_sub(const Ciphertext& a, const Ciphertext& b);
Ciphertext he_mul(const Ciphertext& a, const Ciphertext& b);
// a * b^-1: modular division, x_a * x_b^-1 mod N. Throws
// DivisorNotInvertibleError when gcd(det b, N) != 1.
Ciphertext he_div(const Ciphertext& a, const Ciphertext& b);

// In-place accumulation, no allocation on the word-sized path.
void he_add_assign(Ciphertext& acc, const Ciphertext& b);

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  enum class Kind { kConstant, kInput, kAdd, kSub, kMul, kDiv };

  static ExprPtr constant(Integer value);
  static ExprPtr input(std::string name);
  static ExprPtr binary(Kind kind, ExprPtr lhs, ExprPtr rhs);

  Kind kind() const { return kind_; }
  const Integer& value() const { return value_; }
  const std::string& name() const { return name_; }
  const ExprPtr& lhs() const { return lhs_; }
  const ExprPtr& rhs() const { return rhs_; }

 private:
  Expr(Kind kind, Integer value, std::string name, ExprPtr lhs, ExprPtr rhs)
      : kind_(kind),
        value_(std::move(value)),
        name_(std::move(name)),
        lhs_(std::move(lhs)),
        rhs_(std::move(rhs)) {}

  Kind kind_;
  Integer value_;
  std::string name_;
  ExprPtr lhs_;
  ExprPtr rhs_;
};

// Structural equality.
bool same_expr(const Expr& a, const Expr& b);

// Grammar (ASCII, spaces and tabs ignored between tokens):
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := integer | identifier | '(' expr ')'
// Integers are decimal; there is no unary minus. Throws ParseError with the
// byte offset of the offending token and the set of tokens expected there.
ExprPtr parse_expr(std::string_view text);

// Shortest text that parses back to the same tree.
std::string to_string(const Expr& e);

std::set<std::string> input_names(const Expr& e);

// Evaluates over plaintexts mod n. Division multiplies by the inverse.
Integer eval_plain(const Expr& e, const std::map<std::string, Integer>& inputs,
                   const Integer& n);

// Named ciphertexts plus, optionally, the key used to encrypt constants.
//
// With a key, each constant in a formula is encrypted afresh. Without one,
// a constant c becomes the scalar matrix c*I, which decrypts to c under any
// key; this is what a keyless evaluator uses.
class CipherEnv {
 public:
  CipherEnv() = default;
  CipherEnv(const KeyTuple& key, RandomSource& rng) : key_(&key), rng_(&rng) {}

  // Throws MismatchError if c disagrees with already bound inputs or the key.
  void bind(const std::string& name, Ciphertext c);
  const Ciphertext* find(const std::string& name) const;
  const std::map<std::string, Ciphertext>& inputs() const { return inputs_; }

  Ciphertext constant(const Integer& value) const;

 private:
  std::map<std::string, Ciphertext> inputs_;
  const KeyTuple* key_ = nullptr;
  RandomSource* rng_ = nullptr;
};

// dec(eval_expr(f, env)) == f(plaintexts) mod N. Throws UnboundInputError
// for an unknown name and propagates he_div failures.
Ciphertext eval_expr(const Expr& e, const CipherEnv& env);

}  // namespace matfhe

#endif  // MATFHE_EVAL_H_
