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
#include <vector>

#include "sumfall/boolpoly.hpp"
#include "sumfall/ecurve.hpp"
#include "sumfall/field.hpp"
#include "sumfall/mpoly.hpp"
#include "sumfall/semaev.hpp"

namespace sumfall {

/// F2-linearly independent elements nu_1..nu_{n'} spanning the factor basis.
class SubspaceBasis {
 public:
  /// Throws std::invalid_argument if the elements are dependent or empty.
  explicit SubspaceBasis(std::vector<FieldElement> nu);

  const std::vector<FieldElement>& nu() const { return nu_; }
  std::size_t dimension() const { return nu_.size(); }
  const FieldSpec& field() const { return nu_.front().spec(); }

 private:
  std::vector<FieldElement> nu_;
};

/// True iff the coordinate masks are linearly independent over F2.
bool f2_independent(std::span<const FieldElement> elems);

enum class BasisKind { kCanonical, kRandom };

std::string to_string(BasisKind kind);
BasisKind parse_basis_kind(std::string_view text);

/// canonical: 1, z, ..., z^{n'-1}; random: uniform draws, redrawn until independent.
SubspaceBasis make_basis(BasisKind kind, const FieldSpec& field, unsigned dim, std::mt19937_64& rng);
SubspaceBasis make_basis(BasisKind kind, const FieldSpec& field, unsigned dim, std::uint64_t seed);

/// Variable index of y_{il} for 0-based block i and position l.
inline unsigned descent_var(unsigned block, unsigned l, unsigned np) { return block * np + l; }

/// sum_l nu_l^(2^j) y_{block,l}.
FieldBoolPoly power_linear_form(unsigned block, unsigned j, const SubspaceBasis& basis);

struct DescentParams {
  unsigned m;
  unsigned n;
  unsigned np;
  FieldSpec field;
  std::vector<FieldElement> nu;
  FieldElement c;
  std::optional<CurveParams> curve;
};

/// The n Boolean polynomials s_0..s_{n-1} in m * n' variables.
struct DescentSystem {
  DescentParams params;
  std::vector<BoolPoly> polys;

  unsigned num_vars() const { return params.m * params.np; }
  int max_degree() const;

  /// Header "descent m=.. n=.. np=.. c=0x.. red=0x..", a "nu ..." line, then
  /// one line per s_k.
  std::string to_text() const;
  static DescentSystem parse(std::string_view text);
};

/// Substitutes x_i = sum_l y_{il} nu_l into f (variables x_1..x_m) and reduces
/// by y^2 = y, keeping the GF(2^n) coefficients.
FieldBoolPoly expand_over_subspace(const MPoly& f, unsigned m, const SubspaceBasis& basis);

/// Weil descent of S(x_1, ..., x_m, c) with m = arity - 1.
DescentSystem descend(const SummationPoly& s, const SubspaceBasis& basis, const FieldElement& c,
                      std::optional<CurveParams> curve = std::nullopt);

/// The field value x_i = sum_l nu_l y_{il} at a 0/1 assignment.
FieldElement block_value(BoolMonomial assignment, unsigned block, const SubspaceBasis& basis);

}  // namespace sumfall
