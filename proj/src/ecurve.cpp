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

#include "sumfall/ecurve.hpp"

#include <stdexcept>

namespace sumfall {

CurveParams::CurveParams(const FieldElement& a2, const FieldElement& a6) : a2_(a2), a6_(a6) {
  if (!(a2.spec() == a6.spec())) throw std::invalid_argument("curve coefficients from different fields");
  if (a6.is_zero()) throw std::invalid_argument("a6 = 0 gives a singular curve");
}

std::string Point::to_string() const {
  if (is_infinity()) return "inf";
  return "(" + x().to_string() + "," + y().to_string() + ")";
}

bool on_curve(const Point& p, const CurveParams& e) {
  if (p.is_infinity()) return true;
  const auto& x = p.x();
  const auto& y = p.y();
  if (!(x.spec() == e.field()) || !(y.spec() == e.field())) return false;
  const auto x2 = x * x;
  return y * y + x * y == x2 * x + e.a2() * x2 + e.a6();
}

Point ec_negate(const Point& p, const CurveParams& e) {
  if (!on_curve(p, e)) throw std::invalid_argument("point not on curve");
  if (p.is_infinity()) return p;
  return Point::affine(p.x(), p.x() + p.y());
}

Point ec_add(const Point& p, const Point& q, const CurveParams& e) {
  if (!on_curve(p, e) || !on_curve(q, e)) throw std::invalid_argument("point not on curve");
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  const FieldElement one = FieldElement::one(e.field());
  if (p.x() == q.x()) {
    // Either q = -p or q = p; the doubling of a point with x = 0 is infinity.
    if (p.y() != q.y() || p.x().is_zero()) return Point::infinity();
    const auto lambda = p.x() + p.y() / p.x();
    const auto x3 = lambda * lambda + lambda + e.a2();
    const auto y3 = p.x() * p.x() + (lambda + one) * x3;
    return Point::affine(x3, y3);
  }
  const auto lambda = (p.y() + q.y()) / (p.x() + q.x());
  const auto x3 = lambda * lambda + lambda + p.x() + q.x() + e.a2();
  const auto y3 = lambda * (p.x() + x3) + x3 + p.y();
  return Point::affine(x3, y3);
}

Point random_point(const CurveParams& e, std::mt19937_64& rng) {
  const FieldSpec& f = e.field();
  for (;;) {
    const auto x = FieldElement::random(f, rng);
    if (x.is_zero()) {
      // One point over x = 0 against two elsewhere: keep it half the time.
      if (rng() & 1) continue;
      return Point::affine(x, frobenius(e.a6(), f.degree() - 1));
    }
    const auto x2 = x * x;
    const auto rhs = x2 * x + e.a2() * x2 + e.a6();
    // y = x t with t^2 + t = rhs / x^2
    const auto t = solve_artin_schreier(rhs / x2);
    if (!t) continue;
    auto y = x * *t;
    if (rng() & 1) y += x;
    return Point::affine(x, y);
  }
}

std::vector<Point> sum_zero_tuple(const CurveParams& e, unsigned m1, std::mt19937_64& rng) {
  if (m1 < 2) throw std::invalid_argument("sum_zero_tuple needs at least two points");
  for (;;) {
    std::vector<Point> pts;
    pts.reserve(m1);
    Point acc = Point::infinity();
    for (unsigned i = 0; i + 1 < m1; ++i) {
      pts.push_back(random_point(e, rng));
      acc = ec_add(acc, pts.back(), e);
    }
    if (acc.is_infinity()) continue;
    pts.push_back(ec_negate(acc, e));
    return pts;
  }
}

}  // namespace sumfall
