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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sumfall/boolpoly.hpp"
#include "sumfall/descent.hpp"

namespace sumfall {

/// Computations run in F2[y]/(y_i^2 + y_i) under grevlex; the field equations
/// are never stored, only their S-pairs y_v * g + g for y_v | LM(g).

struct GroebnerStep {
  unsigned degree = 0;
  std::size_t new_polys = 0;
  std::size_t falls = 0;  // new polynomials of degree < degree
  std::size_t rows = 0;
  std::size_t cols = 0;
};

struct StepLog {
  std::vector<GroebnerStep> steps;
};

/// Degree of the first step that produced a fall; empty if none did.
/// Both throw std::invalid_argument on an empty log.
std::optional<unsigned> dff_empirical(const StepLog& log);
unsigned dreg_empirical(const StepLog& log);

struct GroebnerBudget {
  unsigned max_degree = 64;
  std::size_t max_matrix_bytes = std::size_t{2} << 30;
  double max_seconds = 3600.0;
};

struct GBResult {
  std::vector<BoolPoly> basis;  // reduced and sorted by ascending leading monomial; unreduced if exhausted
  StepLog log;
  bool budget_exhausted = false;
  std::string exhausted_reason;
};

/// Each step takes every pending pair (and input) of the smallest degree,
/// builds a matrix with one reducer per reducible monomial and eliminates.
/// Deterministic for fixed inputs and budget, apart from the time limit.
GBResult groebner_log(std::span<const BoolPoly> polys, const GroebnerBudget& budget = {});
GBResult groebner_log(const DescentSystem& system, const GroebnerBudget& budget = {});

/// Full multilinear normal form of p modulo the leading terms of basis.
BoolPoly normal_form(const BoolPoly& p, std::span<const BoolPoly> basis);

/// Checks every S-pair, coprime or not, and every field-equation pair.
bool is_groebner(std::span<const BoolPoly> basis);

/// Drops redundant leading terms and tail-reduces the rest. The input must
/// already be a Groebner basis.
std::vector<BoolPoly> reduce_basis(std::vector<BoolPoly> basis);

}  // namespace sumfall
