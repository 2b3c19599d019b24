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
#include <vector>

#include "sumfall/field.hpp"

namespace sumfall {

/// Ordinary binary curve y^2 + xy = x^3 + a2 x^2 + a6 over GF(2^n).
class CurveParams {
 public:
  /// Throws std::invalid_argument if a6 == 0 (singular) or the fields differ.
  CurveParams(const FieldElement& a2, const FieldElement& a6);

  template <class URBG>
  static CurveParams random(const FieldSpec& field, URBG& rng) {
    auto a2 = FieldElement::random(field, rng);
    auto a6 = FieldElement::random_nonzero(field, rng);
    return {a2, a6};
  }

  const FieldElement& a2() const { return a2_; }
  const FieldElement& a6() const { return a6_; }
  const FieldSpec& field() const { return a2_.spec(); }

 private:
  FieldElement a2_;
  FieldElement a6_;
};

/// Affine point or the point at infinity.
class Point {
 public:
  static Point infinity() { return Point(); }
  static Point affine(const FieldElement& x, const FieldElement& y) { return Point(x, y); }

  bool is_infinity() const { return !xy_.has_value(); }
  const FieldElement& x() const { return xy_->first; }
  const FieldElement& y() const { return xy_->second; }

  /// "inf" or "(<hex-x>,<hex-y>)".
  std::string to_string() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  Point() = default;
  Point(const FieldElement& x, const FieldElement& y) : xy_(std::make_pair(x, y)) {}
  std::optional<std::pair<FieldElement, FieldElement>> xy_;
};

bool on_curve(const Point& p, const CurveParams& e);

Point ec_negate(const Point& p, const CurveParams& e);

/// Chord-and-tangent addition. Throws std::invalid_argument on off-curve input.
Point ec_add(const Point& p, const Point& q, const CurveParams& e);

/// Uniform affine point. Consumes the stream until an x with a solvable y is
/// drawn; the y-root is chosen by one further random bit.
Point random_point(const CurveParams& e, std::mt19937_64& rng);
inline Point random_point(const CurveParams& e, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_point(e, rng);
}

/// m1 affine points summing to infinity: the first m1 - 1 are random, the last
/// is the negated partial sum. Resamples if the partial sum is infinity.
std::vector<Point> sum_zero_tuple(const CurveParams& e, unsigned m1, std::mt19937_64& rng);

}  // namespace sumfall
