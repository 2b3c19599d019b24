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
#include <optional>
#include <random>
#include <string>
#include <string_view>

namespace sumfall {

/// Binary extension field GF(2^n) in the polynomial basis 1, z, ..., z^{n-1}.
///
/// The reduction polynomial is stored as an (n+1)-bit mask with bit n set.
/// Construction verifies that it is irreducible, so every FieldSpec denotes a
/// field. Supported degrees are 1 <= n <= 63.
///
/// The raw-word members operate on coordinate masks below 2^n and are what the
/// hot loops (descent, Weil coordinates) call directly; FieldElement wraps them
/// with a same-field check.
class FieldSpec {
 public:
  static constexpr unsigned kMaxDegree = 63;

  FieldSpec(unsigned n, std::uint64_t reduction);

  /// GF(2^n) with the numerically smallest irreducible reduction polynomial.
  static FieldSpec standard(unsigned n);

  /// Parses "gf2e:n=<n>:red=0x<mask>".
  static FieldSpec parse(std::string_view text);

  unsigned degree() const { return n_; }
  std::uint64_t reduction() const { return red_; }
  std::uint64_t mask() const { return (std::uint64_t{1} << n_) - 1; }
  std::uint64_t order() const { return std::uint64_t{1} << n_; }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sqr(std::uint64_t a) const { return mul(a, a); }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  /// Throws std::domain_error on zero.
  std::uint64_t inv(std::uint64_t a) const;
  /// a^(2^j); the exponent is taken modulo n.
  std::uint64_t frobenius(std::uint64_t a, std::uint64_t j) const;
  /// Absolute trace, 0 or 1.
  unsigned trace(std::uint64_t a) const;

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  unsigned n_;
  std::uint64_t red_;
};

/// Degree of a nonzero polynomial over F2 given as a bit mask; -1 for zero.
int f2_degree(std::uint64_t poly);

/// Rabin irreducibility test for a degree-n polynomial over F2.
bool is_irreducible(std::uint64_t poly, unsigned n);

/// Numerically smallest irreducible polynomial of degree n over F2.
std::uint64_t smallest_irreducible(unsigned n);

/// Element of GF(2^n). Carries its FieldSpec by value so it is self-contained.
class FieldElement {
 public:
  FieldElement(const FieldSpec& spec, std::uint64_t coeffs);

  static FieldElement zero(const FieldSpec& spec) { return {spec, 0}; }
  static FieldElement one(const FieldSpec& spec) { return {spec, 1}; }
  /// The basis element z (mask 0b10); for n = 1 this is 0.
  static FieldElement generator(const FieldSpec& spec) { return {spec, spec.degree() > 1 ? 2u : 0u}; }

  template <class URBG>
  static FieldElement random(const FieldSpec& spec, URBG& rng) {
    return {spec, static_cast<std::uint64_t>(rng()) & spec.mask()};
  }
  template <class URBG>
  static FieldElement random_nonzero(const FieldSpec& spec, URBG& rng) {
    for (;;) {
      auto e = random(spec, rng);
      if (!e.is_zero()) return e;
    }
  }

  /// Parses "0x<hex>" (the prefix is optional).
  static FieldElement parse(const FieldSpec& spec, std::string_view text);

  std::uint64_t coeffs() const { return coeffs_; }
  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const { return coeffs_ == 0; }
  bool is_one() const { return coeffs_ == 1; }

  FieldElement inverse() const;
  FieldElement square() const { return {spec_, spec_.sqr(coeffs_)}; }
  FieldElement pow(std::uint64_t e) const { return {spec_, spec_.pow(coeffs_, e)}; }
  unsigned trace() const { return spec_.trace(coeffs_); }

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o) { return *this += o; }
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o) { return *this *= o.inverse(); }

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend FieldElement operator-(const FieldElement& a) { return a; }
  friend bool operator==(const FieldElement&, const FieldElement&) = default;

  /// "0x" followed by the lowercase hex coordinate mask.
  std::string to_string() const;

 private:
  std::uint64_t coeffs_;
  FieldSpec spec_;
};

/// a^(2^j).
FieldElement frobenius(const FieldElement& a, std::uint64_t j);

/// Returns t with t^2 + t = a, or nullopt when Tr(a) = 1.
///
/// Odd n uses the half-trace; even n solves the F2-linear map t -> t^2 + t
/// by elimination. Of the two roots t and t + 1 the one with bit 0 clear is
/// returned.
std::optional<FieldElement> solve_artin_schreier(const FieldElement& a);

std::string hex_string(std::uint64_t v);
std::uint64_t parse_hex(std::string_view text);

}  // namespace sumfall
