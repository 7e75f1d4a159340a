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

#include "matfhe/eval.h"

#include <cctype>
#include <utility>
#include <vector>

#include "matfhe/errors.h"
#include "matfhe/ring.h"

namespace matfhe {

Ciphertext he_add(const Ciphertext& a, const Ciphertext& b) {
  return Ciphertext(a.body() + b.body());
}

Ciphertext he_sub(const Ciphertext& a, const Ciphertext& b) {
  return Ciphertext(a.body() - b.body());
}

Ciphertext he_mul(const Ciphertext& a, const Ciphertext& b) {
  return Ciphertext(a.body() * b.body());
}

Ciphertext he_div(const Ciphertext& a, const Ciphertext& b) {
  a.body().check_compatible(b.body());
  const Integer det = determinant(b.body());
  const Integer g = gcd(det, b.modulus());
  if (det == 0 || g != 1) {
    throw DivisorNotInvertibleError(
        "divisor ciphertext is not invertible mod N (gcd " +
            to_decimal(det == 0 ? b.modulus() : g) + ")",
        det == 0 ? b.modulus() : g);
  }
  return Ciphertext(a.body() * inverse(b.body()));
}

void he_add_assign(Ciphertext& acc, const Ciphertext& b) {
  acc += b;
}

ExprPtr Expr::constant(Integer value) {
  if (value < 0) throw InvalidArgumentError("constants must be non-negative");
  return ExprPtr(new Expr(Kind::kConstant, std::move(value), {}, nullptr, nullptr));
}

ExprPtr Expr::input(std::string name) {
  if (name.empty()) throw InvalidArgumentError("input name must be non-empty");
  return ExprPtr(new Expr(Kind::kInput, 0, std::move(name), nullptr, nullptr));
}

ExprPtr Expr::binary(Kind kind, ExprPtr lhs, ExprPtr rhs) {
  if (kind == Kind::kConstant || kind == Kind::kInput || !lhs || !rhs) {
    throw InvalidArgumentError("binary node needs an operator and two operands");
  }
  return ExprPtr(new Expr(kind, 0, {}, std::move(lhs), std::move(rhs)));
}

bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::kConstant:
      return a.value() == b.value();
    case Expr::Kind::kInput:
      return a.name() == b.name();
    default:
      return same_expr(*a.lhs(), *b.lhs()) && same_expr(*a.rhs(), *b.rhs());
  }
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_space();
    if (pos_ != text_.size()) {
      fail({"'+'", "'-'", "'*'", "'/'", "end of input"});
    }
    return e;
  }

 private:
  ExprPtr expr() {
    ExprPtr lhs = term();
    while (true) {
      skip_space();
      if (peek('+')) {
        ++pos_;
        lhs = Expr::binary(Expr::Kind::kAdd, lhs, term());
      } else if (peek('-')) {
        ++pos_;
        lhs = Expr::binary(Expr::Kind::kSub, lhs, term());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (true) {
      skip_space();
      if (peek('*')) {
        ++pos_;
        lhs = Expr::binary(Expr::Kind::kMul, lhs, factor());
      } else if (peek('/')) {
        ++pos_;
        lhs = Expr::binary(Expr::Kind::kDiv, lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    skip_space();
    if (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (is_digit(c)) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
        return Expr::constant(Integer(std::string(text_.substr(start, pos_ - start)), 10));
      }
      if (is_ident_start(c)) {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (is_ident_start(text_[pos_]) || is_digit(text_[pos_]))) {
          ++pos_;
        }
        return Expr::input(std::string(text_.substr(start, pos_ - start)));
      }
      if (c == '(') {
        ++pos_;
        ExprPtr inner = expr();
        skip_space();
        if (!peek(')')) fail({"')'", "'+'", "'-'", "'*'", "'/'"});
        ++pos_;
        return inner;
      }
    }
    fail({"integer", "identifier", "'('"});
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string found = pos_ < text_.size()
                            ? "'" + std::string(1, text_[pos_]) + "'"
                            : std::string("end of input");
    std::string message = "syntax error at offset " + std::to_string(pos_) +
                          ": found " + found + ", expected one of";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      message += (i == 0 ? " " : ", ") + expected[i];
    }
    throw ParseError(message, pos_, std::move(expected));
  }

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }
  bool peek(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  static bool is_digit(char c) { return c >= '0' && c <= '9'; }
  static bool is_ident_start(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kAdd:
    case Expr::Kind::kSub:
      return 1;
    case Expr::Kind::kMul:
    case Expr::Kind::kDiv:
      return 2;
    default:
      return 3;
  }
}

char operator_char(Expr::Kind kind) {
  switch (kind) {
    case Expr::Kind::kAdd:
      return '+';
    case Expr::Kind::kSub:
      return '-';
    case Expr::Kind::kMul:
      return '*';
    default:
      return '/';
  }
}

void collect_inputs(const Expr& e, std::set<std::string>& out) {
  if (e.kind() == Expr::Kind::kInput) {
    out.insert(e.name());
  } else if (e.lhs()) {
    collect_inputs(*e.lhs(), out);
    collect_inputs(*e.rhs(), out);
  }
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::string to_string(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::kConstant:
      return to_decimal(e.value());
    case Expr::Kind::kInput:
      return e.name();
    default:
      break;
  }
  const int p = precedence(e);
  std::string lhs = to_string(*e.lhs());
  std::string rhs = to_string(*e.rhs());
  // Left-associative: a right operand of equal precedence keeps its parens.
  if (precedence(*e.lhs()) < p) lhs = "(" + lhs + ")";
  if (precedence(*e.rhs()) <= p) rhs = "(" + rhs + ")";
  return lhs + operator_char(e.kind()) + rhs;
}

std::set<std::string> input_names(const Expr& e) {
  std::set<std::string> out;
  collect_inputs(e, out);
  return out;
}

Integer eval_plain(const Expr& e, const std::map<std::string, Integer>& inputs,
                   const Integer& n) {
  switch (e.kind()) {
    case Expr::Kind::kConstant:
      return mod(e.value(), n);
    case Expr::Kind::kInput: {
      auto it = inputs.find(e.name());
      if (it == inputs.end()) throw UnboundInputError(e.name());
      return mod(it->second, n);
    }
    default:
      break;
  }
  const Integer a = eval_plain(*e.lhs(), inputs, n);
  const Integer b = eval_plain(*e.rhs(), inputs, n);
  switch (e.kind()) {
    case Expr::Kind::kAdd:
      return mod(a + b, n);
    case Expr::Kind::kSub:
      return mod(a - b, n);
    case Expr::Kind::kMul:
      return mod(a * b, n);
    default:
      return mod(a * mod_inverse(b, n), n);
  }
}

void CipherEnv::bind(const std::string& name, Ciphertext c) {
  if (!inputs_.empty()) {
    c.body().check_compatible(inputs_.begin()->second.body());
  } else if (key_ != nullptr) {
    c.body().check_compatible(key_->k());
  }
  inputs_.insert_or_assign(name, std::move(c));
}

const Ciphertext* CipherEnv::find(const std::string& name) const {
  auto it = inputs_.find(name);
  return it == inputs_.end() ? nullptr : &it->second;
}

Ciphertext CipherEnv::constant(const Integer& value) const {
  if (key_ != nullptr) {
    return encrypt(mod(value, key_->n()), *key_, *rng_);
  }
  if (inputs_.empty()) {
    throw InvalidArgumentError(
        "cannot place a constant: no key and no bound input fix N and dim");
  }
  const RingMatrix& like = inputs_.begin()->second.body();
  return Ciphertext(RingMatrix::scalar(like.dim(), like.modulus(), value));
}

Ciphertext eval_expr(const Expr& e, const CipherEnv& env) {
  switch (e.kind()) {
    case Expr::Kind::kConstant:
      return env.constant(e.value());
    case Expr::Kind::kInput: {
      const Ciphertext* c = env.find(e.name());
      if (c == nullptr) throw UnboundInputError(e.name());
      return *c;
    }
    case Expr::Kind::kAdd:
      return he_add(eval_expr(*e.lhs(), env), eval_expr(*e.rhs(), env));
    case Expr::Kind::kSub:
      return he_sub(eval_expr(*e.lhs(), env), eval_expr(*e.rhs(), env));
    case Expr::Kind::kMul:
      return he_mul(eval_expr(*e.lhs(), env), eval_expr(*e.rhs(), env));
    case Expr::Kind::kDiv:
      return he_div(eval_expr(*e.lhs(), env), eval_expr(*e.rhs(), env));
  }
  throw InvalidArgumentError("unknown expression node");
}

}  // namespace matfhe
