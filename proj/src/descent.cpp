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

#include "sumfall/descent.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sumfall/linalg.hpp"

namespace sumfall {

namespace {

using LocalPoly = std::vector<std::pair<std::uint64_t, std::uint64_t>>;  // block-local mask -> coeff

// Expansion of x^a = prod over set bits j of a of (sum_l nu_l^(2^j) y_l), with y^2 = y.
LocalPoly local_power(unsigned a, const SubspaceBasis& basis) {
  const FieldSpec& f = basis.field();
  std::unordered_map<std::uint64_t, std::uint64_t> cur{{0, 1}};
  for (unsigned j = 0; (a >> j) != 0; ++j) {
    if (!((a >> j) & 1)) continue;
    std::unordered_map<std::uint64_t, std::uint64_t> next;
    for (std::size_t l = 0; l < basis.dimension(); ++l) {
      const std::uint64_t coeff = f.frobenius(basis.nu()[l].coeffs(), j);
      for (const auto& [mask, c] : cur) next[mask | (std::uint64_t{1} << l)] ^= f.mul(c, coeff);
    }
    cur.clear();
    for (const auto& [mask, c] : next)
      if (c != 0) cur.emplace(mask, c);
  }
  LocalPoly out(cur.begin(), cur.end());
  std::sort(out.begin(), out.end());
  return out;
}

std::string header_value(const std::string& token, std::string_view key) {
  if (token.size() <= key.size() || token.compare(0, key.size(), key) != 0 || token[key.size()] != '=')
    throw std::invalid_argument("descent header: expected " + std::string(key));
  return token.substr(key.size() + 1);
}

}  // namespace

bool f2_independent(std::span<const FieldElement> elems) {
  if (elems.empty()) return true;
  F2Matrix rows(elems.size(), elems.front().spec().degree());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (unsigned b = 0; b < elems[i].spec().degree(); ++b)
      if ((elems[i].coeffs() >> b) & 1) rows.set(i, b);
  return f2_rank(rows) == elems.size();
}

SubspaceBasis::SubspaceBasis(std::vector<FieldElement> nu) : nu_(std::move(nu)) {
  if (nu_.empty()) throw std::invalid_argument("empty subspace basis");
  for (const auto& e : nu_)
    if (!(e.spec() == nu_.front().spec())) throw std::invalid_argument("basis elements from different fields");
  if (!f2_independent(nu_)) throw std::invalid_argument("subspace basis is linearly dependent");
}

std::string to_string(BasisKind kind) { return kind == BasisKind::kCanonical ? "canonical" : "random"; }

BasisKind parse_basis_kind(std::string_view text) {
  if (text == "canonical") return BasisKind::kCanonical;
  if (text == "random") return BasisKind::kRandom;
  throw std::invalid_argument("unknown basis kind: " + std::string(text));
}

SubspaceBasis make_basis(BasisKind kind, const FieldSpec& field, unsigned dim, std::mt19937_64& rng) {
  if (dim == 0 || dim > field.degree()) throw std::invalid_argument("subspace dimension must lie in [1, n]");
  std::vector<FieldElement> nu;
  if (kind == BasisKind::kCanonical) {
    for (unsigned l = 0; l < dim; ++l) nu.emplace_back(field, std::uint64_t{1} << l);
    return SubspaceBasis(std::move(nu));
  }
  for (;;) {
    nu.clear();
    for (unsigned l = 0; l < dim; ++l) nu.push_back(FieldElement::random(field, rng));
    if (f2_independent(nu)) return SubspaceBasis(std::move(nu));
  }
}

SubspaceBasis make_basis(BasisKind kind, const FieldSpec& field, unsigned dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return make_basis(kind, field, dim, rng);
}

FieldBoolPoly power_linear_form(unsigned block, unsigned j, const SubspaceBasis& basis) {
  const FieldSpec& f = basis.field();
  const unsigned np = static_cast<unsigned>(basis.dimension());
  std::vector<FieldBoolPoly::Term> terms;
  for (unsigned l = 0; l < np; ++l)
    terms.emplace_back(BoolMonomial::variable(descent_var(block, l, np)), f.frobenius(basis.nu()[l].coeffs(), j));
  return FieldBoolPoly::from_terms(f, std::move(terms));
}

int DescentSystem::max_degree() const {
  int d = -1;
  for (const auto& p : polys) d = std::max(d, p.degree());
  return d;
}

FieldBoolPoly expand_over_subspace(const MPoly& f, unsigned m, const SubspaceBasis& basis) {
  const FieldSpec& field = basis.field();
  if (!(f.field() == field)) throw std::invalid_argument("field mismatch in descent");
  const unsigned np = static_cast<unsigned>(basis.dimension());
  if (np > 64 || m * np > BoolMonomial::kMaxVars)
    throw std::invalid_argument("descent needs more than " + std::to_string(BoolMonomial::kMaxVars) + " variables");
  for (unsigned v = m; v < f.ring().num_vars; ++v)
    if (f.degree_in(v) > 0) throw std::invalid_argument("polynomial depends on a variable beyond x_m");

  int max_exp = 0;
  for (unsigned v = 0; v < m; ++v) max_exp = std::max(max_exp, f.degree_in(v));
  std::vector<LocalPoly> powers;
  for (int a = 0; a <= max_exp; ++a) powers.push_back(local_power(static_cast<unsigned>(a), basis));

  // Contract one block at a time, last block first: `level` maps the exponent
  // prefix still to be expanded to the partial expansion of the suffix blocks.
  using Acc = std::unordered_map<BoolMonomial, std::uint64_t, BoolMonomialHash>;
  std::map<std::uint64_t, Acc> level;
  for (const auto& [mono, c] : f.terms()) level[mono.packed()][BoolMonomial{}] ^= c;
  for (unsigned k = m; k-- > 0;) {
    std::map<std::uint64_t, Acc> next;
    for (const auto& [key, acc] : level) {
      const Monomial mono = Monomial::from_packed(key);
      const unsigned a = mono.exponent(k);
      Acc& dst = next[mono.with_exponent(k, 0).packed()];
      for (const auto& [local, lc] : powers[a]) {
        const BoolMonomial shifted = BoolMonomial::from_local(local, k * np);
        for (const auto& [bm, bc] : acc)
          if (bc != 0) dst[shifted * bm] ^= field.mul(lc, bc);
      }
    }
    level = std::move(next);
  }
  std::vector<FieldBoolPoly::Term> terms;
  if (!level.empty()) terms.assign(level.begin()->second.begin(), level.begin()->second.end());
  return FieldBoolPoly::from_terms(field, std::move(terms));
}

DescentSystem descend(const SummationPoly& s, const SubspaceBasis& basis, const FieldElement& c,
                      std::optional<CurveParams> curve) {
  if (s.arity < 2) throw std::invalid_argument("descent needs arity >= 2");
  if (c.is_zero()) throw std::invalid_argument("descent requires c != 0");
  if (!(c.spec() == basis.field())) throw std::invalid_argument("field mismatch in descent");
  const unsigned m = s.arity - 1;
  const FieldSpec& field = basis.field();
  // Specialize x_{m+1} = c.
  std::vector<MPoly::Term> terms;
  for (const auto& [mono, coeff] : s.poly.terms())
    terms.emplace_back(mono.with_exponent(m, 0), field.mul(coeff, field.pow(c.coeffs(), mono.exponent(m))));
  const MPoly specialized = MPoly::from_terms(s.poly.ring(), std::move(terms));
  const FieldBoolPoly expanded = expand_over_subspace(specialized, m, basis);

  DescentSystem sys{DescentParams{m, field.degree(), static_cast<unsigned>(basis.dimension()), field, basis.nu(), c,
                                  std::move(curve)},
                    {}};
  for (unsigned k = 0; k < field.degree(); ++k) sys.polys.push_back(expanded.coordinate(k));
  return sys;
}

FieldElement block_value(BoolMonomial assignment, unsigned block, const SubspaceBasis& basis) {
  const unsigned np = static_cast<unsigned>(basis.dimension());
  std::uint64_t acc = 0;
  for (unsigned l = 0; l < np; ++l)
    if (assignment.contains(descent_var(block, l, np))) acc ^= basis.nu()[l].coeffs();
  return {basis.field(), acc};
}

std::string DescentSystem::to_text() const {
  std::ostringstream out;
  out << "descent m=" << params.m << " n=" << params.n << " np=" << params.np << " c=" << params.c.to_string()
      << " red=" << hex_string(params.field.reduction()) << "\n";
  out << "nu";
  for (const auto& e : params.nu) out << ' ' << e.to_string();
  out << "\n";
  for (const auto& p : polys) out << p.to_string() << "\n";
  return out.str();
}

DescentSystem DescentSystem::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty descent file");
  std::istringstream header(line);
  std::string tok, m, n, np, c, red;
  header >> tok;
  if (tok != "descent") throw std::invalid_argument("descent header must start with 'descent'");
  header >> m >> n >> np >> c >> red;
  const unsigned mv = static_cast<unsigned>(std::stoul(header_value(m, "m")));
  const unsigned nv = static_cast<unsigned>(std::stoul(header_value(n, "n")));
  const unsigned npv = static_cast<unsigned>(std::stoul(header_value(np, "np")));
  const FieldSpec field(nv, parse_hex(header_value(red, "red")));
  const FieldElement cv = FieldElement::parse(field, header_value(c, "c"));

  if (!std::getline(in, line)) throw std::invalid_argument("descent file lacks the nu line");
  std::istringstream nus(line);
  nus >> tok;
  if (tok != "nu") throw std::invalid_argument("expected nu line");
  std::vector<FieldElement> nu;
  while (nus >> tok) nu.push_back(FieldElement::parse(field, tok));
  if (nu.size() != npv) throw std::invalid_argument("nu line length does not match np");

  DescentSystem sys{DescentParams{mv, nv, npv, field, std::move(nu), cv, std::nullopt}, {}};
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    sys.polys.push_back(BoolPoly::parse(line));
  }
  if (sys.polys.size() != nv) throw std::invalid_argument("descent file must contain exactly n polynomials");
  for (const auto& p : sys.polys)
    if (p.span_end() > sys.num_vars()) throw std::invalid_argument("variable index beyond m * np");
  return sys;
}

}  // namespace sumfall
