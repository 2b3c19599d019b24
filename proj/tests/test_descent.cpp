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

#include <random>
#include <stdexcept>

#include "sumfall/descent.hpp"
#include "sumfall/experiment.hpp"

using namespace sumfall;

namespace {

struct Instance {
  SummationPoly s;
  SubspaceBasis basis;
  FieldElement c;
  DescentSystem sys;
};

Instance build(unsigned m, unsigned n, unsigned np, std::uint64_t seed, BasisKind kind = BasisKind::kRandom) {
  const auto f = FieldSpec::standard(n);
  std::mt19937_64 rng(seed);
  const auto curve = CurveParams::random(f, rng);
  const auto c = FieldElement::random_nonzero(f, rng);
  auto basis = make_basis(kind, f, np, rng);
  auto s = semaev_poly(m + 1, curve.a6());
  auto sys = descend(s, basis, c, curve);
  return {std::move(s), std::move(basis), c, std::move(sys)};
}

}  // namespace

TEST_SUITE("descent") {

TEST_CASE("subspace bases") {
  const auto f = FieldSpec::standard(13);
  const auto can = make_basis(BasisKind::kCanonical, f, 3, std::uint64_t{0});
  REQUIRE(can.dimension() == 3);
  CHECK(can.nu()[0].coeffs() == 0b001);
  CHECK(can.nu()[1].coeffs() == 0b010);
  CHECK(can.nu()[2].coeffs() == 0b100);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = make_basis(BasisKind::kRandom, f, 6, seed);
    CHECK(f2_independent(r.nu()));
    CHECK(make_basis(BasisKind::kRandom, f, 6, seed).nu() == r.nu());
  }
  const std::vector<FieldElement> dep{FieldElement(f, 3), FieldElement(f, 5), FieldElement(f, 6)};
  CHECK_FALSE(f2_independent(dep));
  CHECK_THROWS_AS(SubspaceBasis{dep}, std::invalid_argument);
  CHECK_THROWS_AS(make_basis(BasisKind::kCanonical, f, 14, std::uint64_t{0}), std::invalid_argument);
  CHECK(parse_basis_kind(to_string(BasisKind::kRandom)) == BasisKind::kRandom);
  CHECK_THROWS(parse_basis_kind("other"));
}

TEST_CASE("power linear forms") {
  const auto f = FieldSpec::standard(13);
  const auto basis = make_basis(BasisKind::kRandom, f, 4, std::uint64_t{3});
  for (unsigned j = 0; j < 4; ++j) {
    const auto L = power_linear_form(1, j, basis);
    CHECK(L.num_terms() == 4);
    for (unsigned l = 0; l < 4; ++l)
      CHECK(L.coefficient(BoolMonomial::variable(descent_var(1, l, 4))) == frobenius(basis.nu()[l], j));
  }
  const SubspaceBasis one{{FieldElement::one(f)}};
  for (unsigned j = 0; j < 5; ++j) {
    const auto L = power_linear_form(2, j, one);
    REQUIRE(L.num_terms() == 1);
    CHECK(L.coefficient(BoolMonomial::variable(2)).is_one());
  }
}

TEST_CASE("shape of the descended system") {
  const auto inst = build(3, 13, 5, 101);
  CHECK(inst.sys.polys.size() == 13);
  CHECK(inst.sys.num_vars() == 15);
  for (const auto& p : inst.sys.polys) CHECK(p.span_end() <= 15);
  CHECK(inst.sys.max_degree() <= 6);
}

TEST_CASE("descent commutes with evaluation") {
  struct Case {
    unsigned m, n, np;
  };
  for (const Case& k : {Case{2, 12, 6}, Case{3, 13, 5}, Case{4, 13, 4}, Case{3, 17, 6}}) {
    const auto inst = build(k.m, k.n, k.np, 200 + k.m);
    std::mt19937_64 rng(300 + k.n);
    const unsigned nv = k.m * k.np;
    for (int t = 0; t < 200; ++t) {
      const auto pt = BoolMonomial::from_local(rng() & ((std::uint64_t{1} << nv) - 1), 0);
      std::vector<FieldElement> xs;
      for (unsigned i = 0; i < k.m; ++i) xs.push_back(block_value(pt, i, inst.basis));
      xs.push_back(inst.c);
      const auto v = inst.s.poly.eval(xs).coeffs();
      for (unsigned bit = 0; bit < k.n; ++bit) CHECK(inst.sys.polys[bit].eval(pt) == static_cast<bool>((v >> bit) & 1));
    }
  }
}

TEST_CASE("expansion over the subspace agrees with the field polynomial") {
  const auto f = FieldSpec::standard(11);
  const auto basis = make_basis(BasisKind::kRandom, f, 3, std::uint64_t{9});
  const auto s = semaev_poly(3, FieldElement(f, 0x2b));
  // Only x1, x2 appear after fixing x3; build the restricted polynomial first.
  const PolyRing ring{2, f};
  const auto c = FieldElement(f, 0x11);
  const auto x1 = MPoly::variable(ring, 0), x2 = MPoly::variable(ring, 1);
  const auto g = (x1 * x1 + x2 * x2) * MPoly::constant(ring, c * c) + x1 * x2 * MPoly::constant(ring, c) + x1 * x1 * x2 * x2 +
                 MPoly::constant(ring, s.a6);
  const auto e = expand_over_subspace(g, 2, basis);
  for (std::uint64_t bits = 0; bits < 64; ++bits) {
    const auto pt = BoolMonomial::from_local(bits, 0);
    const std::vector<FieldElement> xs{block_value(pt, 0, basis), block_value(pt, 1, basis)};
    FieldElement acc = FieldElement::zero(f);
    for (const auto& [m, coef] : e.terms())
      if (m.divides(pt)) acc += FieldElement(f, coef);
    CHECK(acc == g.eval(xs));
  }
}

TEST_CASE("degree bound") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    CHECK(build(3, 13, 5, seed).sys.max_degree() == 6);
    CHECK(build(4, 13, 4, seed).sys.max_degree() == 12);
  }
  CHECK(build(2, 10, 5, 1).sys.max_degree() == 2);
}

TEST_CASE("bad input") {
  const auto f = FieldSpec::standard(13);
  const auto basis = make_basis(BasisKind::kCanonical, f, 5, std::uint64_t{0});
  const auto s = semaev_poly(3, FieldElement::one(f));
  CHECK_THROWS_AS(descend(s, basis, FieldElement::zero(f), std::nullopt), std::invalid_argument);
  CHECK_THROWS_AS(descend(s, basis, FieldElement::one(FieldSpec::standard(12)), std::nullopt), std::invalid_argument);
}

TEST_CASE("text round trip") {
  const auto inst = build(3, 13, 5, 7);
  const auto text = inst.sys.to_text();
  const auto back = DescentSystem::parse(text);
  CHECK(back.params.m == 3);
  CHECK(back.params.n == 13);
  CHECK(back.params.np == 5);
  CHECK(back.params.c == inst.c);
  CHECK(back.params.nu == inst.basis.nu());
  CHECK(back.polys == inst.sys.polys);
  CHECK(back.to_text() == text);
  CHECK_THROWS(DescentSystem::parse("descent m=3\n"));
  CHECK_THROWS(DescentSystem::parse(""));
}

TEST_CASE("instances are reproducible") {
  const auto a = make_instance(3, 13, 5, 42, BasisKind::kRandom);
  const auto b = make_instance(3, 13, 5, 42, BasisKind::kRandom);
  CHECK(a.to_text() == b.to_text());
  CHECK(make_instance(3, 13, 5, 43, BasisKind::kRandom).to_text() != a.to_text());
}

}  // TEST_SUITE
