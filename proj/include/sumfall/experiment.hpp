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
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "sumfall/descent.hpp"
#include "sumfall/firstfall.hpp"
#include "sumfall/groebner.hpp"

namespace sumfall {

struct ExperimentOptions {
  BasisKind basis = BasisKind::kRandom;
  bool witness = true;  // only meaningful when n' >= m >= 3
  bool groebner = false;
  GroebnerBudget groebner_budget;
  FirstFallOptions first_fall;
  bool timings = false;  // wall-clock fields break byte-identical reruns
};

struct ExperimentRecord {
  unsigned m = 0;
  unsigned n = 0;
  unsigned np = 0;
  std::uint64_t seed = 0;
  BasisKind basis = BasisKind::kRandom;
  std::string a2;
  std::string a6;
  std::string c;
  unsigned bound = 0;  // m(m-1)+1
  int max_degree = 0;
  std::size_t top_rank = 0;
  bool dim_drop = false;
  std::optional<unsigned> dff;
  std::optional<WitnessReport> witness;
  bool groebner_ran = false;
  bool groebner_exhausted = false;
  std::optional<unsigned> groebner_dff;
  std::optional<unsigned> groebner_dreg;
  std::vector<std::pair<std::string, double>> phase_seconds;
};

/// Draws a2, a6, a point P (c = x(P)) and the basis from one mt19937_64 in
/// that order, then descends and measures. n' defaults to ceil(n / m).
/// Throws std::invalid_argument unless 2 <= m <= 5, m <= n' <= n, n <= 48 and
/// m * n' <= 128. Groebner budget exhaustion is recorded, not thrown.
ExperimentRecord run_experiment(unsigned m, unsigned n, std::optional<unsigned> np, std::uint64_t seed,
                                const ExperimentOptions& opts = {});

/// The curve, c and basis run_experiment would use, plus the descent system.
DescentSystem make_instance(unsigned m, unsigned n, unsigned np, std::uint64_t seed, BasisKind basis);

nlohmann::ordered_json to_json(const ExperimentRecord& rec, bool timings = false);
nlohmann::ordered_json to_json(const FirstFallReport& rep);
nlohmann::ordered_json to_json(const StepLog& log);
nlohmann::ordered_json to_json(const WitnessReport& rep);

struct TableRow {
  unsigned m;
  unsigned n;
  unsigned np;
};

struct TableResult {
  TableRow row;
  std::vector<ExperimentRecord> runs;

  /// The common value if every run found the same D_ff.
  std::optional<unsigned> constant_dff() const;
  std::optional<unsigned> constant_dreg() const;
};

/// Seeds first_seed .. first_seed + reps - 1 per row, spread over `jobs`
/// threads; results come back in row and seed order.
std::vector<TableResult> reproduce_table(const std::vector<TableRow>& rows, unsigned reps, std::uint64_t first_seed,
                                         const ExperimentOptions& opts, unsigned jobs = 1);

/// Columns m,n,n',bound,D_ff,D_reg,repetitions; "-" marks a missing value and
/// a non-constant column lists the distinct values joined by '|'.
std::string table_csv(const std::vector<TableResult>& table);

enum class BoundKind { kOld, kNew };

std::string to_string(BoundKind kind);
BoundKind parse_bound_kind(std::string_view text);

struct BoundParams {
  double omega;
  BoundKind kind;
};

/// n^(2/3) + 1 for kOld, n^(2/3) - n^(1/3) + 1 for kNew.
double bound_degree(BoundKind kind, double n);

/// Smallest integer n >= 2 with (2 omega / 3) * log2(n) * D(n) < n / 2.
/// Throws std::invalid_argument unless 2 < omega <= 3, and
/// std::runtime_error if the scan passes `limit`.
std::uint64_t crossover(const BoundParams& params, std::uint64_t limit = std::uint64_t{1} << 32);
std::uint64_t crossover(double omega, const std::function<double(double)>& degree,
                        std::uint64_t limit = std::uint64_t{1} << 32);

}  // namespace sumfall
