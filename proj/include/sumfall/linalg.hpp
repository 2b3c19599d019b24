// Copyright 2026 The sumfall Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sumfall/field.hpp"

namespace sumfall {

/// Dense matrix over F2, row-major, 64 columns per word.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t words_per_row() const { return words_; }

  bool get(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1; }
  void set(std::size_t r, std::size_t c, bool v = true);
  void flip(std::size_t r, std::size_t c) { row(r)[c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::span<std::uint64_t> row(std::size_t r) { return {bits_.data() + r * words_, words_}; }
  std::span<const std::uint64_t> row(std::size_t r) const { return {bits_.data() + r * words_, words_}; }

  /// Appends a zero row and returns its index.
  std::size_t add_row();

  F2Matrix transpose() const;

  static F2Matrix identity(std::size_t k);

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Rank over F2 by Gaussian elimination on a private copy.
std::size_t f2_rank(F2Matrix m);

/// Reduces m in place to reduced row echelon form; the first `rank` rows are
/// the nonzero ones, with strictly increasing pivot columns. Returns the rank.
std::size_t f2_rref(F2Matrix& m);

/// Dense matrix over GF(2^n); entries stored as coordinate masks.
class FieldMatrix {
 public:
  FieldMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols);

  const FieldSpec& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement at(std::size_t r, std::size_t c) const { return {field_, raw(r, c)}; }
  void set(std::size_t r, std::size_t c, const FieldElement& v);
  std::uint64_t raw(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }
  void set_raw(std::size_t r, std::size_t c, std::uint64_t v) { cells_[r * cols_ + c] = v & field_.mask(); }

  static FieldMatrix identity(const FieldSpec& field, std::size_t k);

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> cells_;
};

std::size_t field_rank(FieldMatrix m);

/// Some x with m * x = v, or nullopt when the system is inconsistent.
std::optional<std::vector<FieldElement>> field_solve(FieldMatrix m, std::span<const FieldElement> v);

}  // namespace sumfall
