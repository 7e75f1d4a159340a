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

#ifndef MATFHE_ERRORS_H_
#define MATFHE_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "matfhe/integer.h"

namespace matfhe {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition (bad parameter, out-of-range value).
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// Operands disagree on dimension or modulus.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// A bounded sampling loop ran out of attempts.
class ResourceExhaustedError : public Error {
 public:
  using Error::Error;
};

class NotInvertibleError : public Error {
 public:
  NotInvertibleError(const std::string& what, Integer gcd)
      : Error(what), gcd_(std::move(gcd)) {}

  // gcd(value, N) that blocked inversion; equals N when the value is zero.
  const Integer& gcd() const { return gcd_; }

 private:
  Integer gcd_;
};

// Raised by homomorphic division when the divisor matrix is singular mod N.
class DivisorNotInvertibleError : public NotInvertibleError {
 public:
  using NotInvertibleError::NotInvertibleError;
};

class NonCoprimeModuliError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset,
             std::vector<std::string> expected)
      : Error(what), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnboundInputError : public Error {
 public:
  explicit UnboundInputError(const std::string& name)
      : Error("unbound input: " + name), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

// Malformed on-disk artifact.
class FormatError : public Error {
 public:
  using Error::Error;
};

class InconsistentPairsError : public Error {
 public:
  using Error::Error;
};

class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace matfhe

#endif  // MATFHE_ERRORS_H_
