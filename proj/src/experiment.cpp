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

#include "sumfall/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <mutex>
#include <thread>

#include "sumfall/ecurve.hpp"
#include "sumfall/semaev.hpp"

namespace sumfall {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

void check_params(unsigned m, unsigned n, unsigned np) {
  if (m < 2 || m > 5) throw std::invalid_argument("m must lie in [2, 5]");
  if (n > 48) throw std::invalid_argument("n must be at most 48");
  if (np < m || np > n) throw std::invalid_argument("n' must lie in [m, n]");
  if (m * np > BoolMonomial::kMaxVars) throw std::invalid_argument("m * n' exceeds the variable limit");
}

struct Instance {
  CurveParams curve;
  FieldElement c;
  SubspaceBasis basis;
};

Instance draw_instance(unsigned n, unsigned np, std::uint64_t seed, BasisKind kind) {
  const FieldSpec field = FieldSpec::standard(n);
  std::mt19937_64 rng(seed);
  CurveParams curve = CurveParams::random(field, rng);
  Point p = random_point(curve, rng);
  while (p.x().is_zero()) p = random_point(curve, rng);
  SubspaceBasis basis = make_basis(kind, field, np, rng);
  return {std::move(curve), p.x(), std::move(basis)};
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

}  // namespace

DescentSystem make_instance(unsigned m, unsigned n, unsigned np, std::uint64_t seed, BasisKind basis) {
  check_params(m, n, np);
  Instance inst = draw_instance(n, np, seed, basis);
  return descend(semaev_poly(m + 1, inst.curve.a6()), inst.basis, inst.c, inst.curve);
}

ExperimentRecord run_experiment(unsigned m, unsigned n, std::optional<unsigned> np_opt, std::uint64_t seed,
                                const ExperimentOptions& opts) {
  const unsigned np = np_opt.value_or(m == 0 ? 0 : (n + m - 1) / m);
  check_params(m, n, np);
  ExperimentRecord rec;
  rec.m = m;
  rec.n = n;
  rec.np = np;
  rec.seed = seed;
  rec.basis = opts.basis;
  rec.bound = m * (m - 1) + 1;

  auto t = Clock::now();
  Instance inst = draw_instance(n, np, seed, opts.basis);
  rec.a2 = inst.curve.a2().to_string();
  rec.a6 = inst.curve.a6().to_string();
  rec.c = inst.c.to_string();
  rec.phase_seconds.emplace_back("instance", seconds_since(t));

  t = Clock::now();
  const SummationPoly s = semaev_poly(m + 1, inst.curve.a6());
  rec.phase_seconds.emplace_back("semaev", seconds_since(t));

  t = Clock::now();
  const DescentSystem sys = descend(s, inst.basis, inst.c, inst.curve);
  rec.max_degree = sys.max_degree();
  rec.phase_seconds.emplace_back("descent", seconds_since(t));

  t = Clock::now();
  const TopParts top = top_parts(sys);
  rec.top_rank = top.system.r();
  rec.dim_drop = top.dim_drop;
  rec.dff = first_fall(top, opts.first_fall).dff;
  rec.phase_seconds.emplace_back("first_fall", seconds_since(t));

  if (opts.witness && m >= 3) {
    t = Clock::now();
    rec.witness = verify_witness(top.system, witness_P0(m, inst.basis, inst.c), inst.basis, m);
    rec.phase_seconds.emplace_back("witness", seconds_since(t));
  }

  if (opts.groebner) {
    t = Clock::now();
    const GBResult gb = groebner_log(sys, opts.groebner_budget);
    rec.groebner_ran = true;
    rec.groebner_exhausted = gb.budget_exhausted;
    if (!gb.log.steps.empty()) {
      rec.groebner_dff = dff_empirical(gb.log);
      if (!gb.budget_exhausted) rec.groebner_dreg = dreg_empirical(gb.log);
    }
    rec.phase_seconds.emplace_back("groebner", seconds_since(t));
  }
  return rec;
}

nlohmann::ordered_json to_json(const WitnessReport& rep) {
  return {{"in_span", rep.in_span}, {"annihilated", rep.annihilated}, {"nonzero", rep.nonzero}, {"holds", rep.holds()}};
}

nlohmann::ordered_json to_json(const ExperimentRecord& rec, bool timings) {
  nlohmann::ordered_json j;
  j["m"] = rec.m;
  j["n"] = rec.n;
  j["np"] = rec.np;
  j["seed"] = rec.seed;
  j["basis"] = to_string(rec.basis);
  j["a2"] = rec.a2;
  j["a6"] = rec.a6;
  j["c"] = rec.c;
  j["bound"] = rec.bound;
  j["max_degree"] = rec.max_degree;
  j["top_rank"] = rec.top_rank;
  j["dim_drop"] = rec.dim_drop;
  j["D_ff"] = optional_json(rec.dff);
  j["witness"] = rec.witness ? to_json(*rec.witness) : nlohmann::ordered_json(nullptr);
  if (rec.groebner_ran) {
    j["groebner"] = {{"exhausted", rec.groebner_exhausted},
                     {"D_ff", optional_json(rec.groebner_dff)},
                     {"D_reg", optional_json(rec.groebner_dreg)}};
  } else {
    j["groebner"] = nullptr;
  }
  if (timings) {
    nlohmann::ordered_json secs = nlohmann::ordered_json::object();
    for (const auto& [name, s] : rec.phase_seconds) secs[name] = s;
    j["seconds"] = secs;
  }
  return j;
}

nlohmann::ordered_json to_json(const FirstFallReport& rep) {
  nlohmann::ordered_json j;
  j["d"] = rep.d;
  j["dim_drop"] = rep.dim_drop;
  j["D_ff"] = optional_json(rep.dff);
  j["j_max"] = rep.j_max;
  j["slices"] = nlohmann::ordered_json::array();
  for (const auto& s : rep.slices)
    j["slices"].push_back({{"j", s.j}, {"rows", s.rows}, {"cols", s.cols}, {"rank", s.rank}, {"triv_syz", s.triv_syz}});
  return j;
}

nlohmann::ordered_json to_json(const StepLog& log) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& s : log.steps) j.push_back({{"degree", s.degree}, {"new", s.new_polys}, {"falls", s.falls}});
  return j;
}

std::optional<unsigned> TableResult::constant_dff() const {
  if (runs.empty() || !runs.front().dff) return std::nullopt;
  for (const auto& r : runs)
    if (r.dff != runs.front().dff) return std::nullopt;
  return runs.front().dff;
}

std::optional<unsigned> TableResult::constant_dreg() const {
  if (runs.empty() || !runs.front().groebner_dreg) return std::nullopt;
  for (const auto& r : runs)
    if (r.groebner_dreg != runs.front().groebner_dreg) return std::nullopt;
  return runs.front().groebner_dreg;
}

std::vector<TableResult> reproduce_table(const std::vector<TableRow>& rows, unsigned reps, std::uint64_t first_seed,
                                         const ExperimentOptions& opts, unsigned jobs) {
  for (const auto& r : rows) check_params(r.m, r.n, r.np);
  std::vector<TableResult> out;
  for (const auto& r : rows) out.push_back({r, std::vector<ExperimentRecord>(reps)});
  const std::size_t total = rows.size() * reps;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (std::size_t k; (k = next++) < total;) {
      const std::size_t ri = k / reps, rep = k % reps;
      try {
        out[ri].runs[rep] = run_experiment(rows[ri].m, rows[ri].n, rows[ri].np, first_seed + rep, opts);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  jobs = std::max(1u, jobs);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < jobs; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string table_csv(const std::vector<TableResult>& table) {
  std::ostringstream csv;
  csv << "m,n,n',bound,D_ff,D_reg,repetitions\n";
  auto column = [](const std::vector<ExperimentRecord>& runs, auto get) {
    std::set<unsigned> vals;
    for (const auto& r : runs) {
      const std::optional<unsigned> v = get(r);
      if (!v) return std::string("-");
      vals.insert(*v);
    }
    std::string s;
    for (unsigned v : vals) s += (s.empty() ? "" : "|") + std::to_string(v);
    return s.empty() ? std::string("-") : s;
  };
  for (const auto& t : table) {
    csv << t.row.m << ',' << t.row.n << ',' << t.row.np << ',' << t.row.m * (t.row.m - 1) + 1 << ','
        << column(t.runs, [](const ExperimentRecord& r) { return r.dff; }) << ','
        << column(t.runs, [](const ExperimentRecord& r) { return r.groebner_dreg; }) << ',' << t.runs.size()
        << '\n';
  }
  return csv.str();
}

std::string to_string(BoundKind kind) { return kind == BoundKind::kOld ? "old" : "new"; }

BoundKind parse_bound_kind(std::string_view text) {
  if (text == "old") return BoundKind::kOld;
  if (text == "new") return BoundKind::kNew;
  throw std::invalid_argument("unknown bound kind: " + std::string(text));
}

double bound_degree(BoundKind kind, double n) {
  const double t = std::cbrt(n);
  return kind == BoundKind::kOld ? t * t + 1 : t * t - t + 1;
}

std::uint64_t crossover(double omega, const std::function<double(double)>& degree, std::uint64_t limit) {
  if (!(omega > 2.0 && omega <= 3.0)) throw std::invalid_argument("omega must lie in (2, 3]");
  const double c = 2.0 * omega / 3.0;
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const double x = static_cast<double>(n);
    if (c * std::log2(x) * degree(x) < x / 2.0) return n;
  }
  throw std::runtime_error("no crossover below the scan limit");
}

std::uint64_t crossover(const BoundParams& params, std::uint64_t limit) {
  return crossover(params.omega, [kind = params.kind](double n) { return bound_degree(kind, n); }, limit);
}

}  // namespace sumfall
