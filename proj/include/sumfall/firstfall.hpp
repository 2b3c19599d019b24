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

#include "sumfall/boolpoly.hpp"
#include "sumfall/descent.hpp"
#include "sumfall/field.hpp"
#include "sumfall/linalg.hpp"

namespace sumfall {

/// Homogeneous generators h_1..h_r of one common degree d >= 1, read in the
/// ring where every square vanishes. The generators are F2-independent.
struct GradedSystem {
  unsigned d = 0;
  unsigned num_vars = 0;
  std::vector<BoolPoly> gens;
  std::size_t original_count = 0;

  std::size_t r() const { return gens.size(); }

  /// Zero inputs are skipped and dependent ones dropped; the kept generators
  /// are the reduced echelon basis of the input span. Throws
  /// std::invalid_argument on mixed or zero degree, or if everything is zero.
  static GradedSystem from_homogeneous(unsigned num_vars, std::span<const BoolPoly> polys);
};

struct TopParts {
  GradedSystem system;
  /// rank of the degree-d projections < rank of the full polynomials
  bool dim_drop = false;
  std::size_t full_rank = 0;
};

/// Projects every polynomial onto its component of the common maximal degree.
TopParts top_parts(std::span<const BoolPoly> polys, unsigned num_vars);
TopParts top_parts(const DescentSystem& system);

/// Rows u * h_i for every generator i and every degree-(j-d) monomial u, in
/// that nesting order; columns are the degree-j monomials by monomial_rank.
F2Matrix macaulay_slice(const GradedSystem& g, unsigned j);

/// Dimension of the span of the Koszul and square syzygies in module degree j - d.
std::size_t trivial_syzygy_dim(const GradedSystem& g, unsigned j);

struct SliceStats {
  unsigned j = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  std::size_t triv_syz = 0;
};

struct FirstFallReport {
  unsigned d = 0;
  bool dim_drop = false;
  unsigned j_max = 0;
  std::optional<unsigned> dff;  // empty: no fall up to j_max
  std::vector<SliceStats> slices;
};

struct FirstFallOptions {
  std::optional<unsigned> j_max;  // default 2d
  std::size_t max_matrix_bytes = std::size_t{1} << 30;
};

/// Scans j = d+1 .. j_max. Throws std::length_error when a slice would exceed
/// the memory cap.
FirstFallReport first_fall(const GradedSystem& g, const FirstFallOptions& opts = {});
/// Same, but reports D_ff = d without any slice when the projection lost rank.
FirstFallReport first_fall(const TopParts& top, const FirstFallOptions& opts = {});

/// The same scan with GF(2^e) coefficients. The generators must be homogeneous
/// of one degree and linearly independent over the field.
FirstFallReport first_fall_field(const FieldSpec& field, std::span<const FieldBoolPoly> gens, unsigned num_vars,
                                 std::optional<unsigned> j_max = std::nullopt);

/// c * prod_i prod_{j=0}^{m-2} sum_l nu_l^(2^j) y_{il} with squares vanishing.
/// Requires n' >= m >= 3 and c != 0.
FieldBoolPoly witness_P0(unsigned m, const SubspaceBasis& basis, const FieldElement& c);
FieldBoolPoly witness_P0(const DescentParams& params);

struct WitnessReport {
  bool in_span = false;
  std::vector<bool> annihilated;  // per block k
  bool nonzero = false;

  bool holds() const;
};

WitnessReport verify_witness(const GradedSystem& g, const FieldBoolPoly& p0, const SubspaceBasis& basis,
                             unsigned m);

/// Rank over GF(2^n) of the m x n' matrix (nu_l^(2^j)), j = 0..m-1.
std::size_t moore_rank(std::span<const FieldElement> nu, unsigned m);
inline std::size_t moore_rank(const SubspaceBasis& basis, unsigned m) { return moore_rank(basis.nu(), m); }

}  // namespace sumfall
