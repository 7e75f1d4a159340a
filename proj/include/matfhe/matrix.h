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

#ifndef MATFHE_MATRIX_H_
#define MATFHE_MATRIX_H_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "matfhe/integer.h"
#include "matfhe/random.h"

namespace matfhe {

// Square matrix over Z_N, entries kept in [0, N).
//
// Moduli below 2^62 are stored as machine words so that the 4x4 and 8x8
// kernels never touch the allocator; larger moduli fall back to GMP. The two
// representations are interchangeable through at()/set() and compare equal
// whenever their values do.
class RingMatrix {
 public:
  static constexpr std::size_t kMaxDim = 8;

  // Zero matrix. dim must be in [1, kMaxDim], modulus at least 2.
  RingMatrix(std::size_t dim, const Integer& modulus);

  // Copies move only the dim*dim live words. A moved-from matrix may be
  // assigned to or destroyed, nothing else.
  RingMatrix(const RingMatrix& other)
      : dim_(other.dim_),
        modulus_(other.modulus_),
        word_modulus_(other.word_modulus_),
        cells_(other.cells_) {
    copy_words(other);
  }
  RingMatrix(RingMatrix&& other) noexcept
      : dim_(other.dim_),
        modulus_(std::move(other.modulus_)),
        word_modulus_(other.word_modulus_),
        cells_(std::move(other.cells_)) {
    copy_words(other);
  }
  RingMatrix& operator=(const RingMatrix& other) {
    if (this != &other) {
      dim_ = other.dim_;
      modulus_ = other.modulus_;
      word_modulus_ = other.word_modulus_;
      cells_ = other.cells_;
      copy_words(other);
    }
    return *this;
  }
  RingMatrix& operator=(RingMatrix&& other) noexcept {
    if (this != &other) {
      dim_ = other.dim_;
      modulus_ = std::move(other.modulus_);
      word_modulus_ = other.word_modulus_;
      cells_ = std::move(other.cells_);
      copy_words(other);
    }
    return *this;
  }

  static RingMatrix identity(std::size_t dim, const Integer& modulus);
  static RingMatrix scalar(std::size_t dim, const Integer& modulus,
                           const Integer& value);
  static RingMatrix diagonal(std::span<const Integer> diag,
                             const Integer& modulus);
  // Row-major entries, each required to lie in [0, modulus).
  static RingMatrix from_entries(std::size_t dim, const Integer& modulus,
                                 std::span<const Integer> entries);

  std::size_t dim() const { return dim_; }
  const Integer& modulus() const { return *modulus_; }

  Integer at(std::size_t row, std::size_t col) const;
  // Stores value mod N.
  void set(std::size_t row, std::size_t col, const Integer& value);

  std::vector<Integer> entries() const;
  std::vector<Integer> diagonal_entries() const;
  bool is_diagonal() const;
  bool is_zero() const;

  RingMatrix scaled(const Integer& factor) const;

  RingMatrix& operator+=(const RingMatrix& other);
  RingMatrix& operator-=(const RingMatrix& other);
  friend RingMatrix operator+(RingMatrix lhs, const RingMatrix& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend RingMatrix operator-(RingMatrix lhs, const RingMatrix& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend RingMatrix operator*(const RingMatrix& lhs, const RingMatrix& rhs);

  bool operator==(const RingMatrix& other) const;

  // Throws MismatchError unless dim and modulus agree.
  void check_compatible(const RingMatrix& other) const;

 private:
  bool narrow() const { return word_modulus_ != 0; }
  void copy_words(const RingMatrix& other) {
    if (other.word_modulus_ != 0) {
      std::copy_n(other.words_.data(), dim_ * dim_, words_.data());
    }
  }
  std::size_t index(std::size_t row, std::size_t col) const {
    return row * dim_ + col;
  }

  std::size_t dim_;
  std::shared_ptr<const Integer> modulus_;
  std::uint64_t word_modulus_ = 0;  // nonzero iff cells live in words_
  // Only the first dim*dim words are meaningful.
  std::array<std::uint64_t, kMaxDim * kMaxDim> words_;
  std::vector<Integer> cells_;
};

RingMatrix mat_add(const RingMatrix& a, const RingMatrix& b);
RingMatrix mat_sub(const RingMatrix& a, const RingMatrix& b);
RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b);

// Determinant reduced mod N. Laplace expansion up to 4x4, integer Bareiss
// elimination above that.
Integer determinant(const RingMatrix& a);

// det != 0 and gcd(det, N) == 1.
bool is_invertible(const RingMatrix& a);

// Transposed cofactor matrix, reduced mod N.
RingMatrix adjugate(const RingMatrix& a);

// adjugate(a) * det(a)^-1. Throws NotInvertibleError carrying gcd(det, N).
RingMatrix inverse(const RingMatrix& a);

struct SamplingStats {
  std::size_t draws = 0;            // entries pulled from the random source
  std::size_t element_rerolls = 0;  // single entries discarded and redrawn
  std::size_t row_restarts = 0;     // rows discarded wholesale
  std::size_t full_attempts = 0;    // whole matrices assembled
};

// Builds an invertible matrix row by row. Each finished row is reduced
// against the rows accepted so far; it is kept only if the remainder has a
// unit entry in a column that is not yet a pivot. Otherwise its last entry
// is redrawn, and after dim failed redraws the whole row is. The result is
// checked with is_invertible() before it is returned. More than 1000 discarded
// entries raise ResourceExhaustedError.
RingMatrix random_invertible(std::size_t dim, const Integer& modulus,
                             RandomSource& rng, SamplingStats* stats = nullptr);

// Uniformly random matrix, no invertibility constraint.
RingMatrix random_matrix(std::size_t dim, const Integer& modulus,
                         RandomSource& rng);

}  // namespace matfhe

#endif  // MATFHE_MATRIX_H_
