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

#include "sumfall/semaev.hpp"

#include <algorithm>
#include <stdexcept>

namespace sumfall {

namespace {

// S_3(x_a, x_b, x_c) in the given ring.
MPoly s3_in(const PolyRing& ring, const FieldElement& a6, unsigned a, unsigned b, unsigned c) {
  const auto one = FieldElement::one(ring.field);
  auto mono = [&](std::initializer_list<std::pair<unsigned, unsigned>> exps) {
    Monomial m;
    for (auto [v, e] : exps) m = m * Monomial::variable(v, e);
    return MPoly::monomial(ring, m, one);
  };
  return mono({{a, 2}, {c, 2}}) + mono({{b, 2}, {c, 2}}) + mono({{a, 1}, {b, 1}, {c, 1}}) +
         mono({{a, 2}, {b, 2}}) + MPoly::constant(ring, a6);
}

}  // namespace

SummationPoly s2(const FieldSpec& field) {
  const PolyRing ring{2, field};
  return {2, MPoly::variable(ring, 0) + MPoly::variable(ring, 1), FieldElement::zero(field)};
}

SummationPoly s3(const FieldElement& a6) {
  if (a6.is_zero()) throw std::invalid_argument("s3 requires a6 != 0");
  const PolyRing ring{3, a6.spec()};
  return {3, s3_in(ring, a6, 0, 1, 2), a6};
}

SummationPoly semaev_poly(unsigned arity, const FieldElement& a6) {
  if (arity < 2 || arity > kMaxSummationArity)
    throw std::invalid_argument("summation polynomial arity must lie in [2, " +
                                std::to_string(kMaxSummationArity) + "]");
  if (arity == 2) return s2(a6.spec());
  if (arity == 3) return s3(a6);
  const SummationPoly prev = semaev_poly(arity - 1, a6);
  // Work in x1..x_arity plus the eliminand X in slot `arity`.
  const unsigned x_slot = arity;
  const PolyRing work{arity + 1, a6.spec()};
  const MPoly f = prev.poly.with_num_vars(arity + 1).rename(arity - 2, x_slot);
  const MPoly g = s3_in(work, a6, arity - 2, arity - 1, x_slot);
  const MPoly res = sylvester_resultant(f, g, x_slot);
  return {arity, res.with_num_vars(arity), a6};
}

bool LemmaMonomialReport::holds() const {
  if (full_coeff.is_zero() || linear_coeff.is_zero() || multiples.size() != 2) return false;
  return std::find(multiples.begin(), multiples.end(), full) != multiples.end() &&
         std::find(multiples.begin(), multiples.end(), linear) != multiples.end();
}

LemmaMonomialReport lemma_monomial_check(const SummationPoly& s) {
  if (s.arity < 4) throw std::invalid_argument("lemma_monomial_check requires arity >= 4");
  const unsigned m = s.arity - 1;
  const unsigned e = 1u << (m - 1);
  Monomial full, base;
  for (unsigned v = 0; v < m; ++v) {
    full = full * Monomial::variable(v, e);
    base = base * Monomial::variable(v, e - 1);
  }
  const Monomial linear = base * Monomial::variable(m, 1);
  LemmaMonomialReport report{m, full, linear, s.poly.coefficient(full), s.poly.coefficient(linear), {}};
  for (const auto& [mono, c] : s.poly.terms()) {
    bool multiple = true;
    for (unsigned v = 0; v < m && multiple; ++v) multiple = mono.exponent(v) >= e - 1;
    if (multiple) report.multiples.push_back(mono);
  }
  return report;
}

}  // namespace sumfall
