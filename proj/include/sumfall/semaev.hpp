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

#include <vector>

#include "sumfall/field.hpp"
#include "sumfall/mpoly.hpp"

namespace sumfall {

/// Summation polynomial S_arity(x1, ..., x_arity) for the binary curve with
/// constant term a6. The polynomial lives in a ring of exactly `arity` variables.
struct SummationPoly {
  unsigned arity;
  MPoly poly;
  FieldElement a6;
};

inline constexpr unsigned kMaxSummationArity = 6;

/// x1 + x2.
SummationPoly s2(const FieldSpec& field);

/// (x1^2 + x2^2) x3^2 + x1 x2 x3 + x1^2 x2^2 + a6. Throws if a6 == 0.
SummationPoly s3(const FieldElement& a6);

/// S_arity via S_{m+1} = Res_X(S_m(x1, ..., x_{m-1}, X), S_3(x_m, x_{m+1}, X)),
/// bottoming out at s3. Arity must lie in [2, kMaxSummationArity].
SummationPoly semaev_poly(unsigned arity, const FieldElement& a6);

/// Coefficients of the two distinguished monomials of S_{m+1} (m = arity - 1)
/// and every monomial whose x1..xm part is a multiple of (x1...xm)^(2^(m-1)-1).
struct LemmaMonomialReport {
  unsigned m;
  Monomial full;    // (x1...xm)^(2^(m-1))
  Monomial linear;  // (x1...xm)^(2^(m-1)-1) * x_{m+1}
  FieldElement full_coeff;
  FieldElement linear_coeff;
  std::vector<Monomial> multiples;

  /// Both coefficients nonzero and the multiples are exactly {full, linear}.
  bool holds() const;
};

/// Requires arity >= 4.
LemmaMonomialReport lemma_monomial_check(const SummationPoly& s);

}  // namespace sumfall
