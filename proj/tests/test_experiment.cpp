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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "sumfall/experiment.hpp"

using namespace sumfall;

TEST_SUITE("experiment") {

TEST_CASE("single runs") {
  const auto r3 = run_experiment(3, 13, std::nullopt, 1);
  CHECK(r3.np == 5);
  CHECK(r3.bound == 7);
  CHECK(r3.max_degree == 6);
  CHECK_FALSE(r3.dim_drop);
  CHECK(r3.dff == 7u);
  REQUIRE(r3.witness.has_value());
  CHECK(r3.witness->holds());
  CHECK_FALSE(r3.groebner_ran);

  const auto r2 = run_experiment(2, 10, std::nullopt, 1);
  CHECK(r2.np == 5);
  CHECK(r2.dim_drop);
  CHECK(r2.dff == 2u);
  CHECK_FALSE(r2.witness.has_value());

  ExperimentOptions gb;
  gb.groebner = true;
  const auto r2g = run_experiment(2, 10, 5, 2, gb);
  CHECK(r2g.groebner_ran);
  CHECK_FALSE(r2g.groebner_exhausted);
  CHECK(r2g.groebner_dff == 2u);
  CHECK(r2g.groebner_dreg.has_value());
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(run_experiment(1, 13, std::nullopt, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(6, 30, std::nullopt, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(3, 49, std::nullopt, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(3, 13, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(3, 13, 14, 0), std::invalid_argument);
  CHECK_THROWS_AS(run_experiment(5, 48, 30, 0), std::invalid_argument);
}

TEST_CASE("JSON output is reproducible") {
  const auto a = to_json(run_experiment(3, 13, 5, 17)).dump();
  const auto b = to_json(run_experiment(3, 13, 5, 17)).dump();
  CHECK(a == b);
  CHECK(a.find("seconds") == std::string::npos);
  ExperimentOptions t;
  t.timings = true;
  CHECK(to_json(run_experiment(3, 13, 5, 17, t), true).dump().find("seconds") != std::string::npos);
  const auto j = to_json(run_experiment(3, 13, 5, 17));
  CHECK(j["D_ff"] == 7);
  CHECK(j["m"] == 3);
}

TEST_CASE("table") {
  const std::vector<TableRow> rows{{2, 10, 5}, {3, 13, 5}};
  const auto one = reproduce_table(rows, 3, 100, {}, 1);
  const auto two = reproduce_table(rows, 3, 100, {}, 2);
  REQUIRE(one.size() == 2);
  CHECK(one[0].runs.size() == 3);
  CHECK(one[0].runs[2].seed == 102);
  CHECK(one[0].constant_dff() == 2u);
  CHECK(one[1].constant_dff() == 7u);
  CHECK_FALSE(one[1].constant_dreg().has_value());
  const auto csv = table_csv(one);
  CHECK(csv == "m,n,n',bound,D_ff,D_reg,repetitions\n2,10,5,3,2,-,3\n3,13,5,7,7,-,3\n");
  CHECK(table_csv(two) == csv);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t k = 0; k < 3; ++k) CHECK(to_json(one[i].runs[k]).dump() == to_json(two[i].runs[k]).dump());
}

TEST_CASE("bound degrees") {
  CHECK(bound_degree(BoundKind::kOld, 8.0) == doctest::Approx(5.0));
  CHECK(bound_degree(BoundKind::kNew, 8.0) == doctest::Approx(3.0));
  CHECK(parse_bound_kind(to_string(BoundKind::kNew)) == BoundKind::kNew);
  CHECK_THROWS(parse_bound_kind("mid"));
}

TEST_CASE("crossover") {
  const double omega = std::log2(7.0);
  // Constant degree: direct scan of (2 omega / 3) log2 n < n / 2.
  std::uint64_t expect = 2;
  while (!(2.0 * omega / 3.0 * std::log2(static_cast<double>(expect)) < expect / 2.0)) ++expect;
  CHECK(crossover(omega, [](double) { return 1.0; }) == expect);
  CHECK(expect == 15);

  const auto old_b = crossover({omega, BoundKind::kOld});
  const auto new_b = crossover({omega, BoundKind::kNew});
  CHECK(new_b < old_b);
  CHECK(crossover({2.5, BoundKind::kOld}) <= crossover({omega, BoundKind::kOld}));
  CHECK(crossover({omega, BoundKind::kOld}) <= crossover({3.0, BoundKind::kOld}));
  CHECK_THROWS_AS(crossover({2.0, BoundKind::kOld}), std::invalid_argument);
  CHECK_THROWS_AS(crossover({3.5, BoundKind::kOld}), std::invalid_argument);
  CHECK_THROWS_AS(crossover({omega, BoundKind::kOld}, 100), std::runtime_error);
}

}  // TEST_SUITE
