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

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sumfall/field.hpp"

namespace sumfall {

/// Squarefree monomial in up to 128 Boolean variables, one bit per variable.
class BoolMonomial {
 public:
  static constexpr unsigned kMaxVars = 128;

  constexpr BoolMonomial() = default;
  static BoolMonomial variable(unsigned var);
  static BoolMonomial from_indices(std::span<const unsigned> vars);
  /// Variables offset, offset+1, ... for the set bits of `local`.
  static BoolMonomial from_local(std::uint64_t local, unsigned offset);

  bool contains(unsigned var) const { return (w_[var / 64] >> (var % 64)) & 1; }
  unsigned degree() const { return static_cast<unsigned>(std::popcount(w_[0]) + std::popcount(w_[1])); }
  bool is_one() const { return (w_[0] | w_[1]) == 0; }
  bool divides(BoolMonomial o) const { return (w_[0] & ~o.w_[0]) == 0 && (w_[1] & ~o.w_[1]) == 0; }
  bool disjoint(BoolMonomial o) const { return (w_[0] & o.w_[0]) == 0 && (w_[1] & o.w_[1]) == 0; }
  /// Highest variable index plus one; 0 for the constant monomial.
  unsigned span_end() const;
  std::vector<unsigned> indices() const;

  /// Product in the multilinear quotient (y^2 = y): the union of variables.
  BoolMonomial operator*(BoolMonomial o) const { return BoolMonomial(w_[0] | o.w_[0], w_[1] | o.w_[1]); }
  /// Requires divides(): removes the variables of `o`.
  BoolMonomial operator/(BoolMonomial o) const { return BoolMonomial(w_[0] & ~o.w_[0], w_[1] & ~o.w_[1]); }

  std::uint64_t word(unsigned i) const { return w_[i]; }
  std::size_t hash() const { return std::hash<std::uint64_t>{}(w_[0] * 0x9e3779b97f4a7c15ULL ^ w_[1]); }

  friend bool operator==(BoolMonomial, BoolMonomial) = default;

  /// "(i,j,k)" with ascending 0-based indices; "()" for the constant.
  std::string to_string() const;

 private:
  constexpr BoolMonomial(std::uint64_t lo, std::uint64_t hi) : w_{lo, hi} {}
  std::array<std::uint64_t, 2> w_{};
};

struct BoolMonomialHash {
  std::size_t operator()(BoolMonomial m) const { return m.hash(); }
};

/// Grevlex with y_0 < y_1 < ...: higher degree wins; on a tie the monomial
/// lacking the lowest differing variable is the larger.
bool grevlex_greater(BoolMonomial a, BoolMonomial b);

struct GrevlexGreater {
  bool operator()(BoolMonomial a, BoolMonomial b) const { return grevlex_greater(a, b); }
};

/// Multilinear polynomial over F2: a set of monomials kept in descending grevlex
/// order. Products either reduce by the field equations (multilinear) or drop
/// terms with a repeated variable (squares-vanish), depending on the call.
class BoolPoly {
 public:
  BoolPoly() = default;
  /// Monomials occurring an even number of times cancel.
  static BoolPoly from_monomials(std::vector<BoolMonomial> monos);
  static BoolPoly one() { return from_sorted({BoolMonomial{}}); }
  static BoolPoly variable(unsigned var) { return from_sorted({BoolMonomial::variable(var)}); }
  /// Trusts that `monos` is strictly descending.
  static BoolPoly from_sorted(std::vector<BoolMonomial> monos);

  const std::vector<BoolMonomial>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }
  /// Requires a nonzero polynomial.
  BoolMonomial leading() const { return terms_.front(); }
  /// -1 for zero.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().degree()); }
  bool is_homogeneous() const;
  BoolPoly homogeneous_part(unsigned d) const;
  /// Highest variable index plus one.
  unsigned span_end() const;

  /// Value at the 0/1 assignment whose true variables are `point`.
  bool eval(BoolMonomial point) const;

  BoolPoly& operator+=(const BoolPoly& o);
  friend BoolPoly operator+(BoolPoly a, const BoolPoly& b) { return a += b; }

  /// u * f with y^2 = y.
  BoolPoly mul_multilinear(BoolMonomial u) const;
  /// u * f in F2[y]/(y_i^2): terms sharing a variable with u vanish.
  BoolPoly mul_squares_vanish(BoolMonomial u) const;
  friend BoolPoly mul_multilinear(const BoolPoly& a, const BoolPoly& b);

  friend bool operator==(const BoolPoly&, const BoolPoly&) = default;

  /// Comma-separated monomial tuples, "0" for the zero polynomial.
  std::string to_string() const;
  static BoolPoly parse(std::string_view text);

 private:
  std::vector<BoolMonomial> terms_;
};

/// Multilinear polynomial with GF(2^n) coefficients, descending grevlex.
class FieldBoolPoly {
 public:
  using Term = std::pair<BoolMonomial, std::uint64_t>;

  explicit FieldBoolPoly(const FieldSpec& field) : field_(field) {}
  /// Combines like terms, drops zeros.
  static FieldBoolPoly from_terms(const FieldSpec& field, std::vector<Term> terms);
  /// Embeds an F2 polynomial.
  static FieldBoolPoly embed(const FieldSpec& field, const BoolPoly& p);

  const FieldSpec& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree()); }
  FieldElement coefficient(BoolMonomial m) const;
  bool is_homogeneous() const;

  /// F2 polynomial formed by bit k of every coefficient.
  BoolPoly coordinate(unsigned k) const;

  FieldBoolPoly& operator+=(const FieldBoolPoly& o);
  FieldBoolPoly scaled(const FieldElement& c) const;
  /// Product in the squares-vanish ring.
  friend FieldBoolPoly mul_squares_vanish(const FieldBoolPoly& a, const FieldBoolPoly& b);

  friend bool operator==(const FieldBoolPoly&, const FieldBoolPoly&) = default;

 private:
  FieldSpec field_;
  std::vector<Term> terms_;
};

/// Number of multilinear monomials of degree k in n variables.
std::uint64_t binomial(unsigned n, unsigned k);

/// Dense index of a degree-k monomial in [0, binomial(n, k)): rank 0 is the
/// grevlex-largest, and the order agrees with grevlex.
std::uint64_t monomial_rank(BoolMonomial m, unsigned num_vars);
/// All degree-k monomials in n variables in rank order (grevlex descending).
std::vector<BoolMonomial> monomials_of_degree(unsigned num_vars, unsigned k);

}  // namespace sumfall
