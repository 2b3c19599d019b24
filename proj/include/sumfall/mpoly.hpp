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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sumfall/field.hpp"

namespace sumfall {

/// Exponent vector packed into eight 8-bit slots.
class Monomial {
 public:
  static constexpr unsigned kMaxVars = 8;
  static constexpr unsigned kMaxExponent = 255;

  constexpr Monomial() = default;
  static Monomial variable(unsigned var, unsigned exponent = 1);
  static Monomial from_exponents(std::span<const unsigned> exponents);
  static constexpr Monomial from_packed(std::uint64_t packed) { return Monomial(packed); }

  unsigned exponent(unsigned var) const { return static_cast<unsigned>((packed_ >> (8 * var)) & 0xff); }
  Monomial with_exponent(unsigned var, unsigned exponent) const;
  unsigned total_degree() const;
  bool is_one() const { return packed_ == 0; }
  bool divides(Monomial other) const;
  std::uint64_t packed() const { return packed_; }

  /// Throws std::overflow_error if any exponent would exceed kMaxExponent.
  Monomial operator*(Monomial other) const;
  /// Requires divides(); exponentwise difference.
  Monomial operator/(Monomial other) const { return Monomial(packed_ - other.packed_); }

  friend bool operator==(Monomial, Monomial) = default;

 private:
  constexpr explicit Monomial(std::uint64_t packed) : packed_(packed) {}
  std::uint64_t packed_ = 0;
};

/// Graded reverse lexicographic order with x1 > x2 > ... > xk.
bool grevlex_greater(Monomial a, Monomial b, unsigned num_vars);

struct PolyRing {
  unsigned num_vars;
  FieldSpec field;
  friend bool operator==(const PolyRing&, const PolyRing&) = default;
};

/// Sparse polynomial over GF(2^n) in at most Monomial::kMaxVars variables.
///
/// Terms are kept sorted in descending grevlex order with no zero coefficients,
/// so structural equality is polynomial equality.
class MPoly {
 public:
  using Term = std::pair<Monomial, std::uint64_t>;

  explicit MPoly(const PolyRing& ring);
  static MPoly constant(const PolyRing& ring, const FieldElement& c);
  static MPoly variable(const PolyRing& ring, unsigned var);
  static MPoly monomial(const PolyRing& ring, Monomial m, const FieldElement& c);
  /// Combines like terms and drops zeros.
  static MPoly from_terms(const PolyRing& ring, std::vector<Term> terms);

  const PolyRing& ring() const { return ring_; }
  const FieldSpec& field() const { return ring_.field; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  FieldElement coefficient(Monomial m) const;
  /// -1 for the zero polynomial.
  int degree_in(unsigned var) const;
  int total_degree() const;

  FieldElement eval(std::span<const FieldElement> point) const;

  /// Moves variable `from` to slot `to`; slot `to` must be absent from f.
  MPoly rename(unsigned from, unsigned to) const;
  /// Same polynomial viewed in a ring with a different variable count.
  MPoly with_num_vars(unsigned num_vars) const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator*=(const FieldElement& c);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend MPoly operator*(MPoly a, const FieldElement& c) { return a *= c; }
  friend bool operator==(const MPoly&, const MPoly&) = default;

  /// Terms joined by " + ", each "<coeff-hex>*x1^e1*...": unit coefficients and
  /// zero exponents are elided, variables are 1-based. Zero prints as "0".
  std::string to_string() const;
  static MPoly parse(const PolyRing& ring, std::string_view text);

 private:
  MPoly(const PolyRing& ring, std::vector<Term> sorted_terms);
  void check_ring(const MPoly& o) const;

  PolyRing ring_;
  std::vector<Term> terms_;
};

/// Coefficients c_0..c_e of f viewed as a univariate polynomial in `var`
/// (e = degree of f in var). The c_i are free of var. Zero f gives {0}.
std::vector<MPoly> coeffs_in_x(const MPoly& f, unsigned var);
/// Inverse of coeffs_in_x: sum of c_i * var^i.
MPoly from_coeffs_in_x(std::span<const MPoly> coeffs, unsigned var);

/// Square matrix of polynomials over one ring.
class PolyMatrix {
 public:
  PolyMatrix(const PolyRing& ring, std::size_t size);

  std::size_t size() const { return size_; }
  const PolyRing& ring() const { return ring_; }
  const MPoly& at(std::size_t r, std::size_t c) const { return entries_[r * size_ + c]; }
  void set(std::size_t r, std::size_t c, MPoly p);
  void swap_rows(std::size_t a, std::size_t b);

 private:
  PolyRing ring_;
  std::size_t size_;
  std::vector<MPoly> entries_;
};

/// Exact determinant by Laplace expansion along rows with minors memoized on
/// the set of remaining columns. Division-free; intended for size <= 12.
MPoly det_poly(const PolyMatrix& m);

/// Sylvester matrix of f and g as polynomials in `var`: deg_g rows of shifted
/// f coefficients followed by deg_f rows of shifted g coefficients.
PolyMatrix sylvester_matrix(const MPoly& f, const MPoly& g, unsigned var);

/// Res_var(f, g) = det(Syl(f, g)). Throws on a zero input.
MPoly sylvester_resultant(const MPoly& f, const MPoly& g, unsigned var);

}  // namespace sumfall
