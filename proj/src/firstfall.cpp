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

#include "sumfall/firstfall.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sumfall {

namespace {

// Distinct monomials of a family, grevlex-descending, with reverse lookup.
struct MonomialIndex {
  std::vector<BoolMonomial> monos;
  std::unordered_map<BoolMonomial, std::size_t, BoolMonomialHash> pos;

  void build() {
    std::sort(monos.begin(), monos.end(), GrevlexGreater{});
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());
    pos.clear();
    for (std::size_t i = 0; i < monos.size(); ++i) pos.emplace(monos[i], i);
  }
};

MonomialIndex index_of(std::span<const BoolPoly> polys) {
  MonomialIndex idx;
  for (const auto& p : polys) idx.monos.insert(idx.monos.end(), p.terms().begin(), p.terms().end());
  idx.build();
  return idx;
}

F2Matrix to_matrix(std::span<const BoolPoly> polys, const MonomialIndex& idx) {
  F2Matrix m(polys.size(), idx.monos.size());
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (const auto& t : polys[i].terms()) m.set(i, idx.pos.at(t));
  return m;
}

std::vector<BoolPoly> echelon_basis(std::span<const BoolPoly> polys) {
  const MonomialIndex idx = index_of(polys);
  F2Matrix m = to_matrix(polys, idx);
  const std::size_t rank = f2_rref(m);
  std::vector<BoolPoly> out;
  for (std::size_t r = 0; r < rank; ++r) {
    std::vector<BoolMonomial> terms;
    for (std::size_t c = 0; c < idx.monos.size(); ++c)
      if (m.get(r, c)) terms.push_back(idx.monos[c]);
    out.push_back(BoolPoly::from_sorted(std::move(terms)));
  }
  return out;
}

std::size_t f2_span_rank(std::span<const BoolPoly> polys) {
  const MonomialIndex idx = index_of(polys);
  return f2_rank(to_matrix(polys, idx));
}

std::size_t slice_bytes(std::size_t rows, std::size_t cols) { return rows * ((cols + 63) / 64) * 8; }

FieldBoolPoly times_monomial(const FieldBoolPoly& p, BoolMonomial u) {
  std::vector<FieldBoolPoly::Term> terms;
  for (const auto& [m, c] : p.terms())
    if (m.disjoint(u)) terms.emplace_back(m * u, c);
  return FieldBoolPoly::from_terms(p.field(), std::move(terms));
}

}  // namespace

GradedSystem GradedSystem::from_homogeneous(unsigned num_vars, std::span<const BoolPoly> polys) {
  std::optional<unsigned> deg;
  for (const auto& p : polys) {
    if (p.is_zero()) continue;
    if (!p.is_homogeneous()) throw std::invalid_argument("generator is not homogeneous");
    if (p.span_end() > num_vars) throw std::invalid_argument("generator uses a variable beyond num_vars");
    const auto pd = static_cast<unsigned>(p.degree());
    if (deg && *deg != pd) throw std::invalid_argument("generators have different degrees");
    deg = pd;
  }
  if (!deg) throw std::invalid_argument("all generators are zero");
  if (*deg == 0) throw std::invalid_argument("constant generators have no graded structure");
  return GradedSystem{*deg, num_vars, echelon_basis(polys), polys.size()};
}

TopParts top_parts(std::span<const BoolPoly> polys, unsigned num_vars) {
  int d = -1;
  for (const auto& p : polys) d = std::max(d, p.degree());
  if (d < 0) throw std::invalid_argument("all polynomials are zero");
  std::vector<BoolPoly> tops;
  for (const auto& p : polys) tops.push_back(p.homogeneous_part(static_cast<unsigned>(d)));
  TopParts out{GradedSystem::from_homogeneous(num_vars, tops), false, f2_span_rank(polys)};
  out.dim_drop = out.system.r() < out.full_rank;
  return out;
}

TopParts top_parts(const DescentSystem& system) { return top_parts(system.polys, system.num_vars()); }

F2Matrix macaulay_slice(const GradedSystem& g, unsigned j) {
  if (j < g.d) throw std::invalid_argument("slice degree below generator degree");
  const unsigned N = g.num_vars;
  const auto us = monomials_of_degree(N, j - g.d);
  F2Matrix m(g.r() * us.size(), binomial(N, j));
  std::size_t row = 0;
  for (const auto& h : g.gens)
    for (const auto& u : us) {
      for (const auto& t : h.terms())
        if (t.disjoint(u)) m.flip(row, monomial_rank(t * u, N));
      ++row;
    }
  return m;
}

std::size_t trivial_syzygy_dim(const GradedSystem& g, unsigned j) {
  if (j < 2 * g.d) return 0;
  const unsigned N = g.num_vars;
  const std::size_t r = g.r();
  const std::size_t block = binomial(N, j - g.d);
  const auto ws = monomials_of_degree(N, j - 2 * g.d);
  F2Matrix m(r * (r + 1) / 2 * ws.size(), r * block);
  auto put = [&](std::size_t row, std::size_t coord, const BoolPoly& h, BoolMonomial w) {
    for (const auto& t : h.terms())
      if (t.disjoint(w)) m.flip(row, coord * block + monomial_rank(t * w, N));
  };
  std::size_t row = 0;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t k = 0; k <= i; ++k)
      for (const auto& w : ws) {
        if (k == i) {
          put(row, k, g.gens[k], w);
        } else {
          put(row, i, g.gens[k], w);
          put(row, k, g.gens[i], w);
        }
        ++row;
      }
  return f2_rank(std::move(m));
}

FirstFallReport first_fall(const GradedSystem& g, const FirstFallOptions& opts) {
  FirstFallReport rep;
  rep.d = g.d;
  rep.j_max = opts.j_max.value_or(2 * g.d);
  const unsigned N = g.num_vars;
  for (unsigned j = g.d + 1; j <= rep.j_max; ++j) {
    SliceStats s;
    s.j = j;
    s.rows = g.r() * binomial(N, j - g.d);
    s.cols = binomial(N, j);
    if (slice_bytes(s.rows, s.cols) > opts.max_matrix_bytes)
      throw std::length_error("Macaulay slice at degree " + std::to_string(j) + " exceeds the memory cap");
    s.triv_syz = trivial_syzygy_dim(g, j);
    s.rank = f2_rank(macaulay_slice(g, j));
    rep.slices.push_back(s);
    if (s.rank + s.triv_syz < s.rows) {
      rep.dff = j;
      break;
    }
  }
  return rep;
}

FirstFallReport first_fall(const TopParts& top, const FirstFallOptions& opts) {
  if (!top.dim_drop) return first_fall(top.system, opts);
  FirstFallReport rep;
  rep.d = top.system.d;
  rep.dim_drop = true;
  rep.j_max = opts.j_max.value_or(2 * rep.d);
  rep.dff = rep.d;
  return rep;
}

FirstFallReport first_fall_field(const FieldSpec& field, std::span<const FieldBoolPoly> gens, unsigned num_vars,
                                 std::optional<unsigned> j_max) {
  if (gens.empty()) throw std::invalid_argument("no generators");
  const int d0 = gens.front().degree();
  if (d0 < 1) throw std::invalid_argument("generators must have positive degree");
  const auto d = static_cast<unsigned>(d0);
  for (const auto& h : gens) {
    if (!(h.field() == field)) throw std::invalid_argument("field mismatch");
    if (h.degree() != d0 || !h.is_homogeneous()) throw std::invalid_argument("generators must share one homogeneous degree");
  }
  {
    FieldMatrix top(field, gens.size(), binomial(num_vars, d));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (const auto& [m, c] : gens[i].terms()) top.set_raw(i, monomial_rank(m, num_vars), c);
    if (field_rank(top) != gens.size()) throw std::invalid_argument("generators are linearly dependent");
  }
  const std::size_t r = gens.size();
  FirstFallReport rep;
  rep.d = d;
  rep.j_max = j_max.value_or(2 * d);
  for (unsigned j = d + 1; j <= rep.j_max; ++j) {
    const auto us = monomials_of_degree(num_vars, j - d);
    SliceStats s;
    s.j = j;
    s.rows = r * us.size();
    s.cols = binomial(num_vars, j);
    FieldMatrix mac(field, s.rows, s.cols);
    std::size_t row = 0;
    for (const auto& h : gens)
      for (const auto& u : us) {
        const FieldBoolPoly prod = times_monomial(h, u);
        for (const auto& [t, c] : prod.terms()) mac.set_raw(row, monomial_rank(t, num_vars), c);
        ++row;
      }
    s.rank = field_rank(std::move(mac));
    if (j >= 2 * d) {
      const std::size_t block = us.size();
      const auto ws = monomials_of_degree(num_vars, j - 2 * d);
      FieldMatrix syz(field, r * (r + 1) / 2 * ws.size(), r * block);
      auto put = [&](std::size_t rw, std::size_t coord, const FieldBoolPoly& h, BoolMonomial w) {
        const FieldBoolPoly prod = times_monomial(h, w);
        for (const auto& [t, c] : prod.terms())
          syz.set_raw(rw, coord * block + monomial_rank(t, num_vars), c);
      };
      row = 0;
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k <= i; ++k)
          for (const auto& w : ws) {
            if (k == i) {
              put(row, k, gens[k], w);
            } else {
              put(row, i, gens[k], w);
              put(row, k, gens[i], w);
            }
            ++row;
          }
      s.triv_syz = field_rank(std::move(syz));
    }
    rep.slices.push_back(s);
    if (s.rank + s.triv_syz < s.rows) {
      rep.dff = j;
      break;
    }
  }
  return rep;
}

FieldBoolPoly witness_P0(unsigned m, const SubspaceBasis& basis, const FieldElement& c) {
  if (m < 3) throw std::invalid_argument("witness needs m >= 3");
  if (basis.dimension() < m) throw std::invalid_argument("witness needs n' >= m");
  if (c.is_zero()) throw std::invalid_argument("witness needs c != 0");
  if (!(c.spec() == basis.field())) throw std::invalid_argument("field mismatch");
  const FieldSpec& f = basis.field();
  FieldBoolPoly acc = FieldBoolPoly::from_terms(f, {{BoolMonomial{}, c.coeffs()}});
  for (unsigned i = 0; i < m; ++i) {
    FieldBoolPoly block = FieldBoolPoly::from_terms(f, {{BoolMonomial{}, 1}});
    for (unsigned j = 0; j + 1 < m; ++j) block = mul_squares_vanish(block, power_linear_form(i, j, basis));
    acc = mul_squares_vanish(acc, block);
  }
  return acc;
}

FieldBoolPoly witness_P0(const DescentParams& params) {
  return witness_P0(params.m, SubspaceBasis(params.nu), params.c);
}

bool WitnessReport::holds() const {
  return in_span && nonzero && !annihilated.empty() &&
         std::all_of(annihilated.begin(), annihilated.end(), [](bool b) { return b; });
}

WitnessReport verify_witness(const GradedSystem& g, const FieldBoolPoly& p0, const SubspaceBasis& basis,
                             unsigned m) {
  WitnessReport rep;
  rep.nonzero = !p0.is_zero();
  for (unsigned k = 0; k < m; ++k)
    rep.annihilated.push_back(mul_squares_vanish(power_linear_form(k, 0, basis), p0).is_zero());

  MonomialIndex idx = index_of(g.gens);
  for (const auto& [t, c] : p0.terms()) idx.monos.push_back(t);
  idx.build();
  const FieldSpec& f = p0.field();
  FieldMatrix a(f, idx.monos.size(), g.r());
  for (std::size_t i = 0; i < g.r(); ++i)
    for (const auto& t : g.gens[i].terms()) a.set_raw(idx.pos.at(t), i, 1);
  std::vector<FieldElement> v(idx.monos.size(), FieldElement::zero(f));
  for (const auto& [t, c] : p0.terms()) v[idx.pos.at(t)] = FieldElement(f, c);
  rep.in_span = field_solve(std::move(a), v).has_value();
  return rep;
}

std::size_t moore_rank(std::span<const FieldElement> nu, unsigned m) {
  if (nu.empty()) return 0;
  const FieldSpec& f = nu.front().spec();
  if (m > f.degree()) throw std::invalid_argument("moore_rank needs m <= n");
  FieldMatrix a(f, m, nu.size());
  for (unsigned j = 0; j < m; ++j)
    for (std::size_t l = 0; l < nu.size(); ++l) a.set_raw(j, l, f.frobenius(nu[l].coeffs(), j));
  return field_rank(std::move(a));
}

}  // namespace sumfall
