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

#include "sumfall/linalg.hpp"

#include <bit>
#include <stdexcept>

namespace sumfall {

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

void F2Matrix::set(std::size_t r, std::size_t c, bool v) {
  const std::uint64_t bit = std::uint64_t{1} << (c % 64);
  auto& w = row(r)[c / 64];
  w = v ? (w | bit) : (w & ~bit);
}

std::size_t F2Matrix::add_row() {
  bits_.resize(bits_.size() + words_, 0);
  return rows_++;
}

F2Matrix F2Matrix::transpose() const {
  F2Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (get(r, c)) t.set(c, r);
  return t;
}

F2Matrix F2Matrix::identity(std::size_t k) {
  F2Matrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i);
  return m;
}

std::size_t f2_rank(F2Matrix m) {
  const std::size_t rows = m.rows();
  const std::size_t words = m.words_per_row();
  std::size_t rank = 0;
  for (std::size_t w = 0; w < words && rank < rows; ++w) {
    for (unsigned b = 0; b < 64 && rank < rows; ++b) {
      const std::uint64_t bit = std::uint64_t{1} << b;
      std::size_t sel = rank;
      while (sel < rows && !(m.row(sel)[w] & bit)) ++sel;
      if (sel == rows) continue;
      auto piv = m.row(sel);
      if (sel != rank) {
        auto dst = m.row(rank);
        for (std::size_t k = w; k < words; ++k) std::swap(piv[k], dst[k]);
        piv = dst;
      }
      for (std::size_t r = rank + 1; r < rows; ++r) {
        auto cur = m.row(r);
        if (cur[w] & bit)
          for (std::size_t k = w; k < words; ++k) cur[k] ^= piv[k];
      }
      ++rank;
    }
  }
  return rank;
}

std::size_t f2_rref(F2Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t words = m.words_per_row();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < rows; ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t sel = rank;
    while (sel < rows && !(m.row(sel)[w] & bit)) ++sel;
    if (sel == rows) continue;
    if (sel != rank) {
      auto a = m.row(sel), b = m.row(rank);
      for (std::size_t k = 0; k < words; ++k) std::swap(a[k], b[k]);
    }
    const auto piv = m.row(rank);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      auto cur = m.row(r);
      if (cur[w] & bit)
        for (std::size_t k = w; k < words; ++k) cur[k] ^= piv[k];
    }
    ++rank;
  }
  return rank;
}

FieldMatrix::FieldMatrix(const FieldSpec& field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), cells_(rows * cols, 0) {}

void FieldMatrix::set(std::size_t r, std::size_t c, const FieldElement& v) {
  if (!(v.spec() == field_)) throw std::invalid_argument("field mismatch in matrix entry");
  cells_[r * cols_ + c] = v.coeffs();
}

FieldMatrix FieldMatrix::identity(const FieldSpec& field, std::size_t k) {
  FieldMatrix m(field, k, k);
  for (std::size_t i = 0; i < k; ++i) m.set_raw(i, i, 1);
  return m;
}

namespace {

// Reduced row echelon form in place over `cols` leading columns of a row-major
// array with `stride` entries per row. Returns pivot columns in row order.
std::vector<std::size_t> field_rref(const FieldSpec& f, std::vector<std::uint64_t>& a, std::size_t rows,
                                    std::size_t cols, std::size_t stride) {
  std::vector<std::size_t> pivots;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t sel = rank;
    while (sel < rows && a[sel * stride + c] == 0) ++sel;
    if (sel == rows) continue;
    if (sel != rank)
      for (std::size_t k = 0; k < stride; ++k) std::swap(a[sel * stride + k], a[rank * stride + k]);
    const std::uint64_t inv = f.inv(a[rank * stride + c]);
    for (std::size_t k = c; k < stride; ++k) a[rank * stride + k] = f.mul(a[rank * stride + k], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank) continue;
      const std::uint64_t factor = a[r * stride + c];
      if (factor == 0) continue;
      for (std::size_t k = c; k < stride; ++k) a[r * stride + k] ^= f.mul(factor, a[rank * stride + k]);
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace

std::size_t field_rank(FieldMatrix m) {
  std::vector<std::uint64_t> cells(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) cells[r * m.cols() + c] = m.raw(r, c);
  return field_rref(m.field(), cells, m.rows(), m.cols(), m.cols()).size();
}

std::optional<std::vector<FieldElement>> field_solve(FieldMatrix m, std::span<const FieldElement> v) {
  if (v.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  const FieldSpec& f = m.field();
  const std::size_t stride = m.cols() + 1;
  std::vector<std::uint64_t> aug(m.rows() * stride);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    if (!(v[r].spec() == f)) throw std::invalid_argument("field mismatch in right-hand side");
    for (std::size_t c = 0; c < m.cols(); ++c) aug[r * stride + c] = m.raw(r, c);
    aug[r * stride + m.cols()] = v[r].coeffs();
  }
  const auto pivots = field_rref(f, aug, m.rows(), m.cols(), stride);
  for (std::size_t r = pivots.size(); r < m.rows(); ++r)
    if (aug[r * stride + m.cols()] != 0) return std::nullopt;
  std::vector<FieldElement> x(m.cols(), FieldElement::zero(f));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = FieldElement(f, aug[i * stride + m.cols()]);
  return x;
}

}  // namespace sumfall
