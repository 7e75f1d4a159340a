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

#include "matfhe/matrix.h"

#include <algorithm>
#include <string>
#include <utility>

#include "matfhe/errors.h"
#include "matfhe/ring.h"

namespace matfhe {
namespace {

constexpr std::size_t kWordModulusBits = 62;
constexpr std::size_t kRerollBudget = 1000;

using u128 = unsigned __int128;

std::uint64_t to_word(const Integer& v) {
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

// Laplace expansion along successive rows; `used` marks consumed columns.
Integer laplace(const std::vector<Integer>& a, std::size_t n, std::size_t row,
                unsigned used) {
  if (row == n) return 1;
  Integer sum = 0;
  bool negate = false;
  for (std::size_t col = 0; col < n; ++col) {
    if (used & (1u << col)) continue;
    const Integer& entry = a[row * n + col];
    if (entry != 0) {
      Integer term = entry * laplace(a, n, row + 1, used | (1u << col));
      if (negate) {
        sum -= term;
      } else {
        sum += term;
      }
    }
    negate = !negate;
  }
  return sum;
}

// Fraction-free elimination over Z; every division is exact.
Integer bareiss(std::vector<Integer> a, std::size_t n) {
  bool negate = false;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a[swap * n + k] == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[swap * n + j]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer& cell = a[i * n + j];
        cell = cell * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(cell.get_mpz_t(), cell.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k * n + k];
  }
  Integer det = a[n * n - 1];
  return negate ? Integer(-det) : det;
}

Integer integer_determinant(const std::vector<Integer>& a, std::size_t n) {
  if (n == 0) return 1;
  if (n <= 4) return laplace(a, n, 0, 0);
  return bareiss(a, n);
}

std::vector<Integer> minor_of(const std::vector<Integer>& a, std::size_t n,
                              std::size_t skip_row, std::size_t skip_col) {
  std::vector<Integer> out;
  out.reserve((n - 1) * (n - 1));
  for (std::size_t i = 0; i < n; ++i) {
    if (i == skip_row) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != skip_col) out.push_back(a[i * n + j]);
    }
  }
  return out;
}

}  // namespace

RingMatrix::RingMatrix(std::size_t dim, const Integer& modulus) : dim_(dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw InvalidArgumentError("matrix dimension must be in [1, 8], got " +
                               std::to_string(dim));
  }
  if (modulus < 2) throw InvalidArgumentError("matrix modulus must be >= 2");
  modulus_ = std::make_shared<const Integer>(modulus);
  if (bit_length(modulus) <= kWordModulusBits) {
    word_modulus_ = to_word(modulus);
    std::fill_n(words_.data(), dim * dim, 0);
  } else {
    cells_.assign(dim * dim, Integer(0));
  }
}

RingMatrix RingMatrix::identity(std::size_t dim, const Integer& modulus) {
  return scalar(dim, modulus, 1);
}

RingMatrix RingMatrix::scalar(std::size_t dim, const Integer& modulus,
                              const Integer& value) {
  RingMatrix out(dim, modulus);
  for (std::size_t i = 0; i < dim; ++i) out.set(i, i, value);
  return out;
}

RingMatrix RingMatrix::diagonal(std::span<const Integer> diag,
                                const Integer& modulus) {
  RingMatrix out(diag.size(), modulus);
  for (std::size_t i = 0; i < diag.size(); ++i) out.set(i, i, diag[i]);
  return out;
}

RingMatrix RingMatrix::from_entries(std::size_t dim, const Integer& modulus,
                                    std::span<const Integer> entries) {
  RingMatrix out(dim, modulus);
  if (entries.size() != dim * dim) {
    throw InvalidArgumentError("expected " + std::to_string(dim * dim) +
                               " entries, got " + std::to_string(entries.size()));
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i] < 0 || entries[i] >= modulus) {
      throw InvalidArgumentError("matrix entry " + to_decimal(entries[i]) +
                                 " outside [0, N)");
    }
    out.set(i / dim, i % dim, entries[i]);
  }
  return out;
}

Integer RingMatrix::at(std::size_t row, std::size_t col) const {
  if (narrow()) return make_integer(words_[index(row, col)]);
  return cells_[index(row, col)];
}

void RingMatrix::set(std::size_t row, std::size_t col, const Integer& value) {
  Integer reduced = mod(value, *modulus_);
  if (narrow()) {
    words_[index(row, col)] = to_word(reduced);
  } else {
    cells_[index(row, col)] = std::move(reduced);
  }
}

std::vector<Integer> RingMatrix::entries() const {
  std::vector<Integer> out;
  out.reserve(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out.push_back(at(i, j));
  }
  return out;
}

std::vector<Integer> RingMatrix::diagonal_entries() const {
  std::vector<Integer> out;
  for (std::size_t i = 0; i < dim_; ++i) out.push_back(at(i, i));
  return out;
}

bool RingMatrix::is_diagonal() const {
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) {
      if (i == j) continue;
      if (narrow() ? words_[index(i, j)] != 0 : cells_[index(i, j)] != 0) {
        return false;
      }
    }
  }
  return true;
}

bool RingMatrix::is_zero() const {
  for (std::size_t i = 0; i < dim_ * dim_; ++i) {
    if (narrow() ? words_[i] != 0 : cells_[i] != 0) return false;
  }
  return true;
}

RingMatrix RingMatrix::scaled(const Integer& factor) const {
  RingMatrix out = *this;
  const Integer f = mod(factor, *modulus_);
  for (std::size_t i = 0; i < dim_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) out.set(i, j, at(i, j) * f);
  }
  return out;
}

void RingMatrix::check_compatible(const RingMatrix& other) const {
  if (dim_ != other.dim_) {
    throw MismatchError("matrix dimensions differ: " + std::to_string(dim_) +
                        " vs " + std::to_string(other.dim_));
  }
  // Equal word moduli settle it without touching GMP.
  if (modulus_ != other.modulus_ &&
      !(narrow() && word_modulus_ == other.word_modulus_) &&
      *modulus_ != *other.modulus_) {
    throw MismatchError("matrix moduli differ: " + to_decimal(*modulus_) +
                        " vs " + to_decimal(*other.modulus_));
  }
}

namespace {

// a, b < m < 2^62, so a + b - m fits a signed word and its sign says
// whether m has to come back.
template <std::size_t kCount>
void add_words(std::uint64_t* a, const std::uint64_t* b, std::size_t count,
               std::uint64_t m) {
  const std::size_t n = kCount ? kCount : count;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t s = static_cast<std::int64_t>(a[i] + b[i] - m);
    a[i] = static_cast<std::uint64_t>(s) + (m & static_cast<std::uint64_t>(s >> 63));
  }
}

template <std::size_t kCount>
void sub_words(std::uint64_t* a, const std::uint64_t* b, std::size_t count,
               std::uint64_t m) {
  const std::size_t n = kCount ? kCount : count;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t s = static_cast<std::int64_t>(a[i] - b[i]);
    a[i] = static_cast<std::uint64_t>(s) + (m & static_cast<std::uint64_t>(s >> 63));
  }
}

}  // namespace

RingMatrix& RingMatrix::operator+=(const RingMatrix& other) {
  if (modulus_ != other.modulus_ || dim_ != other.dim_) check_compatible(other);
  const std::size_t n = dim_ * dim_;
  if (narrow()) {
    if (n == 16) {
      add_words<16>(words_.data(), other.words_.data(), n, word_modulus_);
    } else {
      add_words<0>(words_.data(), other.words_.data(), n, word_modulus_);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      cells_[i] += other.cells_[i];
      if (cells_[i] >= *modulus_) cells_[i] -= *modulus_;
    }
  }
  return *this;
}

RingMatrix& RingMatrix::operator-=(const RingMatrix& other) {
  if (modulus_ != other.modulus_ || dim_ != other.dim_) check_compatible(other);
  const std::size_t n = dim_ * dim_;
  if (narrow()) {
    if (n == 16) {
      sub_words<16>(words_.data(), other.words_.data(), n, word_modulus_);
    } else {
      sub_words<0>(words_.data(), other.words_.data(), n, word_modulus_);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      cells_[i] -= other.cells_[i];
      if (cells_[i] < 0) cells_[i] += *modulus_;
    }
  }
  return *this;
}

RingMatrix operator*(const RingMatrix& lhs, const RingMatrix& rhs) {
  if (lhs.modulus_ != rhs.modulus_ || lhs.dim_ != rhs.dim_) lhs.check_compatible(rhs);
  const std::size_t n = lhs.dim_;
  RingMatrix out = lhs;
  if (lhs.narrow()) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        u128 acc = 0;
        for (std::size_t k = 0; k < n; ++k) {
          acc += static_cast<u128>(lhs.words_[i * n + k]) * rhs.words_[k * n + j];
        }
        out.words_[i * n + j] = static_cast<std::uint64_t>(acc % lhs.word_modulus_);
      }
    }
  } else {
    const mpz_srcptr m = lhs.modulus_->get_mpz_t();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        mpz_ptr cell = out.cells_[i * n + j].get_mpz_t();
        mpz_mul(cell, lhs.cells_[i * n].get_mpz_t(), rhs.cells_[j].get_mpz_t());
        for (std::size_t k = 1; k < n; ++k) {
          mpz_addmul(cell, lhs.cells_[i * n + k].get_mpz_t(),
                     rhs.cells_[k * n + j].get_mpz_t());
        }
        mpz_mod(cell, cell, m);
      }
    }
  }
  return out;
}

bool RingMatrix::operator==(const RingMatrix& other) const {
  if (dim_ != other.dim_ || *modulus_ != *other.modulus_) return false;
  const std::size_t n = dim_ * dim_;
  if (narrow()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (words_[i] != other.words_[i]) return false;
    }
    return true;
  }
  return cells_ == other.cells_;
}

RingMatrix mat_add(const RingMatrix& a, const RingMatrix& b) { return a + b; }
RingMatrix mat_sub(const RingMatrix& a, const RingMatrix& b) { return a - b; }
RingMatrix mat_mul(const RingMatrix& a, const RingMatrix& b) { return a * b; }

Integer determinant(const RingMatrix& a) {
  return mod(integer_determinant(a.entries(), a.dim()), a.modulus());
}

bool is_invertible(const RingMatrix& a) {
  const Integer det = determinant(a);
  return det != 0 && gcd(det, a.modulus()) == 1;
}

RingMatrix adjugate(const RingMatrix& a) {
  const std::size_t n = a.dim();
  RingMatrix out(n, a.modulus());
  if (n == 1) {
    out.set(0, 0, 1);
    return out;
  }
  const std::vector<Integer> cells = a.entries();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Integer cofactor = integer_determinant(minor_of(cells, n, i, j), n - 1);
      if ((i + j) % 2 == 1) cofactor = -cofactor;
      out.set(j, i, cofactor);
    }
  }
  return out;
}

RingMatrix inverse(const RingMatrix& a) {
  const Integer det = determinant(a);
  if (det == 0) {
    throw NotInvertibleError("matrix determinant is zero mod " +
                                 to_decimal(a.modulus()),
                             a.modulus());
  }
  const Integer det_inv = mod_inverse(det, a.modulus());
  return adjugate(a).scaled(det_inv);
}

RingMatrix random_matrix(std::size_t dim, const Integer& modulus,
                         RandomSource& rng) {
  RingMatrix out(dim, modulus);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) out.set(i, j, rng.below(modulus));
  }
  return out;
}

RingMatrix random_invertible(std::size_t dim, const Integer& modulus,
                             RandomSource& rng, SamplingStats* stats) {
  SamplingStats local;
  SamplingStats& s = stats ? *stats : local;
  std::size_t discarded = 0;
  auto draw = [&]() {
    ++s.draws;
    return rng.below(modulus);
  };
  auto discard = [&]() {
    if (++discarded > kRerollBudget) {
      throw ResourceExhaustedError(
          "no invertible matrix found within the redraw budget");
    }
  };

  struct PivotRow {
    std::size_t col;
    std::vector<Integer> row;  // row[col] == 1, zero at earlier pivot columns
  };

  while (true) {
    ++s.full_attempts;
    RingMatrix out(dim, modulus);
    std::vector<PivotRow> basis;
    std::vector<bool> pivot_used(dim, false);

    for (std::size_t r = 0; r < dim; ++r) {
      std::vector<Integer> row(dim);
      for (std::size_t c = 0; c < dim; ++c) row[c] = draw();

      std::size_t redraws = 0;
      while (true) {
        std::vector<Integer> rest = row;
        for (const PivotRow& p : basis) {
          const Integer factor = rest[p.col];
          if (factor == 0) continue;
          for (std::size_t c = 0; c < dim; ++c) {
            rest[c] = mod(rest[c] - factor * p.row[c], modulus);
          }
        }
        std::size_t pivot = dim;
        for (std::size_t c = 0; c < dim && pivot == dim; ++c) {
          if (!pivot_used[c] && gcd(rest[c], modulus) == 1) pivot = c;
        }
        if (pivot != dim) {
          const Integer inv = mod_inverse(rest[pivot], modulus);
          for (Integer& v : rest) v = mod(v * inv, modulus);
          basis.push_back({pivot, std::move(rest)});
          pivot_used[pivot] = true;
          break;
        }
        discard();
        if (redraws++ < dim) {
          ++s.element_rerolls;
          row[dim - 1] = draw();
        } else {
          ++s.row_restarts;
          redraws = 0;
          for (std::size_t c = 0; c < dim; ++c) row[c] = draw();
        }
      }
      for (std::size_t c = 0; c < dim; ++c) out.set(r, c, row[c]);
    }
    if (is_invertible(out)) return out;
    discard();
  }
}

}  // namespace matfhe
