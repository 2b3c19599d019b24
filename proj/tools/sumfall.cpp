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

// Command-line driver: summation polynomials, Weil descent, first fall
// degrees, the Groebner engine and the experiment table.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "sumfall/descent.hpp"
#include "sumfall/experiment.hpp"
#include "sumfall/firstfall.hpp"
#include "sumfall/groebner.hpp"
#include "sumfall/semaev.hpp"

namespace {

using sumfall::BoolPoly;
using json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitParam = 2;
constexpr int kExitBudget = 3;

struct BudgetExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out);
  if (!f) throw std::runtime_error("cannot write " + g.out);
  f << text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<sumfall::TableRow> parse_rows(const std::string& text) {
  std::vector<sumfall::TableRow> rows;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    unsigned m = 0, n = 0, np = 0;
    char c1 = 0, c2 = 0;
    std::stringstream is(item);
    is >> m >> c1 >> n;
    if (!is || c1 != ':') throw std::invalid_argument("row must look like m:n or m:n:np, got " + item);
    if (is >> c2) {
      if (c2 != ':' || !(is >> np)) throw std::invalid_argument("row must look like m:n or m:n:np, got " + item);
    } else {
      np = m == 0 ? 0 : (n + m - 1) / m;
    }
    rows.push_back({m, n, np});
  }
  return rows;
}

std::vector<sumfall::TableRow> preset_rows(const std::string& name) {
  std::vector<sumfall::TableRow> rows;
  if (name == "m2" || name == "all")
    for (unsigned n = 34; n <= 40; ++n) rows.push_back({2, n, (n + 1) / 2});
  if (name == "m3" || name == "all") {
    for (unsigned n = 13; n <= 15; ++n) rows.push_back({3, n, 5});
    for (unsigned n = 16; n <= 18; ++n) rows.push_back({3, n, 6});
  }
  if (name == "m4" || name == "all")
    for (unsigned n = 13; n <= 16; ++n) rows.push_back({4, n, 4});
  if (rows.empty()) throw std::invalid_argument("unknown preset " + name + " (m2, m3, m4, all)");
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sumfall: summation polynomials, Weil descent and first fall degrees over GF(2^n)"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
  app.add_option("--out", g.out, "output file (default stdout)");
  app.add_option("--format", g.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  // semaev build
  auto* semaev = app.add_subcommand("semaev", "summation polynomials");
  semaev->require_subcommand(1);
  semaev->fallthrough();
  auto* sbuild = semaev->add_subcommand("build", "write S_{m+1} in the polynomial text format");
  unsigned s_m = 0, s_n = 0;
  std::string s_a6, s_red;
  sbuild->add_option("--m", s_m, "number of summands in the decomposition; builds S_{m+1}")->required();
  sbuild->add_option("--n", s_n, "extension degree")->required();
  sbuild->add_option("--a6", s_a6, "curve coefficient a6 as 0x-prefixed hex")->required();
  sbuild->add_option("--red", s_red, "reduction polynomial mask (default: smallest irreducible)");

  // descent
  auto* descent = app.add_subcommand("descent", "random instance and its Weil descent");
  unsigned d_m = 0, d_n = 0, d_np = 0;
  std::string d_basis = "random";
  descent->add_option("--m", d_m)->required();
  descent->add_option("--n", d_n)->required();
  descent->add_option("--np", d_np, "subspace dimension (default ceil(n/m))");
  descent->add_option("--basis", d_basis)->check(CLI::IsMember({"canonical", "random"}))->capture_default_str();

  // firstfall
  auto* ff = app.add_subcommand("firstfall", "first fall degree of a descent file");
  std::string ff_in;
  unsigned ff_jmax = 0;
  bool ff_no_witness = false;
  ff->add_option("--in", ff_in, "descent file")->required();
  ff->add_option("--j-max", ff_jmax, "largest slice degree (default 2d)");
  ff->add_flag("--no-witness", ff_no_witness, "skip the witness check");

  // groebner
  auto* gb = app.add_subcommand("groebner", "Groebner basis with a per-step degree log");
  std::string gb_in, gb_log;
  unsigned gb_maxdeg = 64;
  double gb_mem = 2048, gb_sec = 3600;
  gb->add_option("--in", gb_in, "descent file")->required();
  gb->add_option("--max-deg", gb_maxdeg)->capture_default_str();
  gb->add_option("--budget-mem", gb_mem, "matrix memory cap in MiB")->capture_default_str();
  gb->add_option("--budget-sec", gb_sec, "wall-clock cap in seconds")->capture_default_str();
  gb->add_option("--log", gb_log, "write the step log as JSON here");

  // table
  auto* table = app.add_subcommand("table", "repeated experiments per parameter row");
  std::string t_rows, t_preset;
  unsigned t_reps = 10, t_jobs = 1;
  bool t_groebner = false, t_timings = false;
  double t_gb_sec = 3600;
  std::string t_basis = "random";
  auto* rows_opt = table->add_option("--rows", t_rows, "comma-separated m:n[:np] list");
  table->add_option("--preset", t_preset, "m2, m3, m4 or all")->excludes(rows_opt);
  table->add_option("--reps", t_reps)->capture_default_str();
  table->add_option("--jobs", t_jobs)->capture_default_str();
  table->add_option("--basis", t_basis)->check(CLI::IsMember({"canonical", "random"}))->capture_default_str();
  table->add_flag("--groebner", t_groebner, "also run the Groebner engine");
  table->add_option("--groebner-sec", t_gb_sec, "per-instance Groebner time cap")->capture_default_str();
  table->add_flag("--timings", t_timings, "include wall-clock seconds in JSON");

  // crossover
  auto* cross = app.add_subcommand("crossover", "where the subexponential bound beats n/2");
  double c_omega = std::log2(7.0);
  std::string c_kind = "both";
  cross->add_option("--omega", c_omega)->capture_default_str();
  cross->add_option("--kind", c_kind)->check(CLI::IsMember({"old", "new", "both"}))->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitParam;
  }

  try {
    if (semaev->parsed()) {
      const sumfall::FieldSpec field =
          s_red.empty() ? sumfall::FieldSpec::standard(s_n) : sumfall::FieldSpec(s_n, sumfall::parse_hex(s_red));
      const auto a6 = sumfall::FieldElement::parse(field, s_a6);
      if (s_m + 1 > sumfall::kMaxSummationArity) throw std::invalid_argument("m too large");
      emit(g, sumfall::semaev_poly(s_m + 1, a6).poly.to_string() + "\n");
    } else if (descent->parsed()) {
      const unsigned np = d_np != 0 ? d_np : (d_m == 0 ? 0 : (d_n + d_m - 1) / d_m);
      emit(g, sumfall::make_instance(d_m, d_n, np, g.seed, sumfall::parse_basis_kind(d_basis)).to_text());
    } else if (ff->parsed()) {
      const auto sys = sumfall::DescentSystem::parse(read_file(ff_in));
      const auto top = sumfall::top_parts(sys);
      sumfall::FirstFallOptions opts;
      if (ff_jmax != 0) opts.j_max = ff_jmax;
      const auto rep = sumfall::first_fall(top, opts);
      if (g.format == "csv") {
        std::ostringstream csv;
        csv << "j,rows,cols,rank,triv_syz\n";
        for (const auto& s : rep.slices)
          csv << s.j << ',' << s.rows << ',' << s.cols << ',' << s.rank << ',' << s.triv_syz << '\n';
        emit(g, csv.str());
      } else {
        json j = sumfall::to_json(rep);
        const auto& p = sys.params;
        if (!ff_no_witness && p.m >= 3 && p.np >= p.m) {
          const sumfall::SubspaceBasis basis(p.nu);
          j["witness"] = sumfall::to_json(
              sumfall::verify_witness(top.system, sumfall::witness_P0(p.m, basis, p.c), basis, p.m));
        }
        emit(g, j.dump(2) + "\n");
      }
    } else if (gb->parsed()) {
      const auto sys = sumfall::DescentSystem::parse(read_file(gb_in));
      sumfall::GroebnerBudget budget;
      budget.max_degree = gb_maxdeg;
      budget.max_matrix_bytes = static_cast<std::size_t>(gb_mem * 1024.0 * 1024.0);
      budget.max_seconds = gb_sec;
      const auto res = sumfall::groebner_log(sys, budget);
      if (!gb_log.empty()) {
        std::ofstream f(gb_log);
        if (!f) throw std::runtime_error("cannot write " + gb_log);
        f << sumfall::to_json(res.log).dump(2) << "\n";
      }
      json j;
      j["exhausted"] = res.budget_exhausted;
      if (res.budget_exhausted) j["reason"] = res.exhausted_reason;
      j["steps"] = res.log.steps.size();
      const auto dff = res.log.steps.empty() ? std::nullopt : sumfall::dff_empirical(res.log);
      j["D_ff"] = dff ? json(*dff) : json(nullptr);
      j["D_reg"] = res.log.steps.empty() || res.budget_exhausted ? json(nullptr)
                                                                 : json(sumfall::dreg_empirical(res.log));
      j["basis"] = json::array();
      for (const auto& p : res.basis) j["basis"].push_back(p.to_string());
      emit(g, j.dump(2) + "\n");
      if (res.budget_exhausted) throw BudgetExhausted(res.exhausted_reason);
    } else if (table->parsed()) {
      if (t_rows.empty() && t_preset.empty()) throw std::invalid_argument("table needs --rows or --preset");
      const auto rows = t_rows.empty() ? preset_rows(t_preset) : parse_rows(t_rows);
      sumfall::ExperimentOptions opts;
      opts.basis = sumfall::parse_basis_kind(t_basis);
      opts.groebner = t_groebner;
      opts.groebner_budget.max_seconds = t_gb_sec;
      const auto res = sumfall::reproduce_table(rows, t_reps, g.seed, opts, t_jobs);
      bool exhausted = false;
      for (const auto& r : res)
        for (const auto& run : r.runs) exhausted = exhausted || run.groebner_exhausted;
      if (g.format == "csv") {
        emit(g, sumfall::table_csv(res));
      } else {
        json j = json::array();
        for (const auto& r : res)
          for (const auto& run : r.runs) j.push_back(sumfall::to_json(run, t_timings));
        emit(g, j.dump(2) + "\n");
      }
      if (exhausted) throw BudgetExhausted("a Groebner run exhausted its budget");
    } else if (cross->parsed()) {
      std::vector<sumfall::BoundKind> kinds;
      if (c_kind != "new") kinds.push_back(sumfall::BoundKind::kOld);
      if (c_kind != "old") kinds.push_back(sumfall::BoundKind::kNew);
      if (g.format == "csv") {
        std::ostringstream csv;
        csv << "kind,omega,crossover\n";
        for (auto k : kinds) csv << sumfall::to_string(k) << ',' << c_omega << ',' << sumfall::crossover({c_omega, k}) << '\n';
        emit(g, csv.str());
      } else {
        json j;
        j["omega"] = c_omega;
        for (auto k : kinds) j[sumfall::to_string(k)] = sumfall::crossover({c_omega, k});
        emit(g, j.dump(2) + "\n");
      }
    }
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParam;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitOk;
}
