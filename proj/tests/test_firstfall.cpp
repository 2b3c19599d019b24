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

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "oracles.hpp"
#include "sumfall/descent.hpp"
#include "sumfall/experiment.hpp"
#include "sumfall/firstfall.hpp"

using namespace sumfall;

namespace {

BoolPoly P(const char* s) { return BoolPoly::parse(s); }

std::vector<unsigned> subset(std::uint64_t bits) {
  std::vector<unsigned> v;
  for (unsigned i = 0; bits; ++i, bits >>= 1)
    if (bits & 1) v.push_back(i);
  return v;
}

std::vector<BoolPoly> to_polys(const std::vector<std::vector<std::uint64_t>>& gens) {
  std::vector<BoolPoly> out;
  for (const auto& h : gens) {
    std::vector<BoolMonomial> ms;
    for (auto m : h) ms.push_back(BoolMonomial::from_indices(subset(m)));
    out.push_back(BoolPoly::from_monomials(ms));
  }
  return out;
}

}  // namespace

TEST_SUITE("firstfall") {

TEST_CASE("graded systems") {
  const std::vector<BoolPoly> in{P("(1,2)"), P("0"), P("(1,2),(0,3)"), P("(0,3)")};
  const auto g = GradedSystem::from_homogeneous(4, in);
  CHECK(g.d == 2);
  CHECK(g.r() == 2);
  CHECK(g.original_count == 4);
  const std::vector<BoolPoly> mixed{P("(1,2)"), P("(0)")};
  CHECK_THROWS_AS(GradedSystem::from_homogeneous(4, mixed), std::invalid_argument);
  const std::vector<BoolPoly> constant{P("()")};
  CHECK_THROWS_AS(GradedSystem::from_homogeneous(4, constant), std::invalid_argument);
  const std::vector<BoolPoly> zeros{P("0")};
  CHECK_THROWS_AS(GradedSystem::from_homogeneous(4, zeros), std::invalid_argument);
}

TEST_CASE("top parts and dimension drop") {
  const std::vector<BoolPoly> drop{P("(1,2),(3)"), P("(1,2)")};
  const auto t = top_parts(drop, 4);
  CHECK(t.system.d == 2);
  CHECK(t.dim_drop);
  CHECK(t.system.r() == 1);
  CHECK(t.full_rank == 2);
  const auto rep = first_fall(t);
  CHECK(rep.dim_drop);
  CHECK(rep.dff == 2u);

  const std::vector<BoolPoly> single{P("(1,2)")};
  const auto s = top_parts(single, 3);
  CHECK_FALSE(s.dim_drop);
  CHECK(s.system.d == 2);

  const auto sys = make_instance(3, 13, 5, 5, BasisKind::kRandom);
  const auto tp = top_parts(sys);
  CHECK(tp.system.d == 6);
  CHECK_FALSE(tp.dim_drop);
  CHECK(tp.system.r() == 13);
}

TEST_CASE("trivial syzygies") {
  const std::vector<BoolPoly> h{P("(0,1)")};
  const auto g = GradedSystem::from_homogeneous(2, h);
  CHECK(trivial_syzygy_dim(g, 3) == 0);
  CHECK(trivial_syzygy_dim(g, 4) == 1);
  std::mt19937_64 rng(111);
  for (int t = 0; t < 10; ++t) {
    const auto gens = oracle::random_system(rng, 6, 2, 2, 3);
    const auto gs = GradedSystem::from_homogeneous(6, to_polys(gens));
    CHECK(trivial_syzygy_dim(gs, 3) == 0);
    // The trivial module sits inside the kernel.
    const auto rows = gs.r() * binomial(6, 2);
    CHECK(trivial_syzygy_dim(gs, 4) + f2_rank(macaulay_slice(gs, 4)) <= rows);
  }
}

TEST_CASE("Macaulay slices") {
  const std::vector<BoolPoly> h{P("(0,1)"), P("(1,2)")};
  const auto g = GradedSystem::from_homogeneous(3, h);
  const auto m = macaulay_slice(g, 3);
  CHECK(m.rows() == 2 * 3);
  CHECK(m.cols() == 1);
  CHECK(f2_rank(m) == 1);
}

TEST_CASE("small first fall examples") {
  {
    const std::vector<BoolPoly> h{P("(1,2)")};
    const auto rep = first_fall(GradedSystem::from_homogeneous(4, h));
    CHECK(rep.dff == 3u);
    CHECK(rep.j_max == 4);
    REQUIRE(rep.slices.size() == 1);
    CHECK(rep.slices[0].triv_syz == 0);
  }
  {
    const std::vector<BoolPoly> h{P("(1,2)"), P("(1,3)")};
    const auto rep = first_fall(GradedSystem::from_homogeneous(4, h));
    CHECK(rep.dff == 3u);
    const std::vector<std::vector<std::uint64_t>> raw{{0b0110}, {0b1010}};
    CHECK(oracle::brute_first_fall(raw, 4, 2, 4, 20).dff == 3);
  }
  {
    // A generic linear form in many variables has no fall before 2d.
    const std::vector<BoolPoly> h{P("(0),(1),(2),(3),(4)")};
    const auto rep = first_fall(GradedSystem::from_homogeneous(5, h));
    CHECK_FALSE(rep.dff.has_value());  // the only kernel vector is h * e_1
    const std::vector<std::vector<std::uint64_t>> raw{{1, 2, 4, 8, 16}};
    CHECK(oracle::brute_first_fall(raw, 5, 1, 2, 20).dff == rep.dff.value_or(0));
  }
  CHECK_THROWS_AS(first_fall(GradedSystem::from_homogeneous(30, std::vector<BoolPoly>{P("(0,1,2,3,4,5)")}),
                             FirstFallOptions{12, 1024}),
                  std::length_error);
}

TEST_CASE("first fall matches the exhaustive kernel search") {
  std::mt19937_64 rng(112);
  int compared = 0, with_fall = 0;
  while (compared < 50) {
    const unsigned d = 1 + static_cast<unsigned>(rng() % 3);
    // Small n keeps the higher slices enumerable; dense generators make a
    // fall at d + 1 less likely.
    const unsigned n_max = d == 1 ? 12 : d == 2 ? 6 : 7;
    const unsigned n = d + 1 + static_cast<unsigned>(rng() % (n_max - d));
    const unsigned r = 1 + static_cast<unsigned>(rng() % 3);
    const unsigned terms = 1 + static_cast<unsigned>(rng() % binomial(n, d));
    if (binomial(n, d) < r) continue;
    const auto gens = oracle::random_system(rng, n, d, r, terms);
    const auto brute = oracle::brute_first_fall(gens, n, d, 2 * d, 22);
    if (!brute.feasible) continue;
    const auto rep = first_fall(GradedSystem::from_homogeneous(n, to_polys(gens)));
    CHECK(rep.dff.value_or(0) == brute.dff);
    ++compared;
    with_fall += brute.dff != 0;
  }
  CHECK(with_fall > 10);
}

TEST_CASE("extension of the coefficient field leaves the first fall unchanged") {
  std::mt19937_64 rng(113);
  const auto f = FieldSpec::standard(7);
  for (int t = 0; t < 20; ++t) {
    const unsigned n = 5 + static_cast<unsigned>(rng() % 3), d = 2, r = 2 + static_cast<unsigned>(rng() % 2);
    const auto polys = to_polys(oracle::random_system(rng, n, d, r, 3));
    const auto g = GradedSystem::from_homogeneous(n, polys);
    // Random invertible r x r matrix over GF(2^7).
    std::vector<std::vector<FieldElement>> a;
    for (;;) {
      a.assign(r, {});
      FieldMatrix fm(f, r, r);
      for (unsigned i = 0; i < r; ++i)
        for (unsigned k = 0; k < r; ++k) {
          a[i].push_back(FieldElement::random(f, rng));
          fm.set(i, k, a[i][k]);
        }
      if (field_rank(fm) == r) break;
    }
    std::vector<FieldBoolPoly> mixed;
    for (unsigned i = 0; i < r; ++i) {
      FieldBoolPoly acc(f);
      for (unsigned k = 0; k < r; ++k) acc += FieldBoolPoly::embed(f, polys[k]).scaled(a[i][k]);
      mixed.push_back(acc);
    }
    const auto over_f2 = first_fall(g);
    const auto over_ext = first_fall_field(f, mixed, n);
    CHECK(over_f2.dff == over_ext.dff);
    REQUIRE(over_f2.slices.size() == over_ext.slices.size());
    for (std::size_t s = 0; s < over_f2.slices.size(); ++s) CHECK(over_f2.slices[s].rank == over_ext.slices[s].rank);
  }
}

TEST_CASE("Moore rank") {
  const auto f = FieldSpec::standard(13);
  const auto can = make_basis(BasisKind::kCanonical, f, 3, std::uint64_t{0});
  CHECK(moore_rank(can, 3) == 3);
  // Cofactor determinant of the 3x3 matrix (nu_l^(2^j)).
  std::uint64_t a[3][3];
  for (unsigned j = 0; j < 3; ++j)
    for (unsigned l = 0; l < 3; ++l) a[j][l] = frobenius(can.nu()[l], j).coeffs();
  auto m2 = [&](int r0, int r1, int c0, int c1) { return f.mul(a[r0][c0], a[r1][c1]) ^ f.mul(a[r0][c1], a[r1][c0]); };
  const std::uint64_t det = f.mul(a[0][0], m2(1, 2, 1, 2)) ^ f.mul(a[0][1], m2(1, 2, 0, 2)) ^ f.mul(a[0][2], m2(1, 2, 0, 1));
  CHECK(det != 0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto b = make_basis(BasisKind::kRandom, f, 5, seed);
    CHECK(moore_rank(b, 3) == 3);
    CHECK(moore_rank(b, 5) == 5);
  }
  std::vector<FieldElement> rep{FieldElement(f, 7), FieldElement(f, 7), FieldElement(f, 9)};
  CHECK(moore_rank(rep, 3) < 3);
  CHECK_THROWS(moore_rank(can, 14));
}

TEST_CASE("witness shape") {
  const auto f = FieldSpec::standard(13);
  const auto can = make_basis(BasisKind::kCanonical, f, 3, std::uint64_t{0});
  const FieldElement c(f, 0x155);
  const auto p0 = witness_P0(3, can, c);
  // Each block contributes L_0 L_1 = sum over pairs l < l' of
  // (nu_l nu_l'^2 + nu_l' nu_l^2) y_l y_l'.
  std::map<std::uint64_t, FieldElement> pair;
  for (unsigned l = 0; l < 3; ++l)
    for (unsigned k = l + 1; k < 3; ++k) {
      const auto& u = can.nu()[l];
      const auto& v = can.nu()[k];
      pair.emplace((1u << l) | (1u << k), u * v.square() + v * u.square());
    }
  std::size_t expected_terms = 0;
  for (const auto& [m0, c0] : pair)
    for (const auto& [m1, c1] : pair)
      for (const auto& [m2, c2] : pair) {
        const auto mono = BoolMonomial::from_local(m0 | (m1 << 3) | (m2 << 6), 0);
        const auto coef = c * c0 * c1 * c2;
        CHECK(p0.coefficient(mono) == coef);
        expected_terms += !coef.is_zero();
      }
  CHECK(expected_terms == 27);
  CHECK(p0.num_terms() == 27);
  CHECK(p0.degree() == 6);
  CHECK(p0.is_homogeneous());

  const auto b = make_basis(BasisKind::kRandom, f, 5, std::uint64_t{4});
  const auto q = witness_P0(4, b, c);
  CHECK_FALSE(q.is_zero());
  for (const auto& [m, coef] : q.terms()) {
    CHECK(m.degree() == 12);
    for (unsigned blk = 0; blk < 4; ++blk)
      CHECK(__builtin_popcountll((m.word(0) >> (5 * blk)) & 0x1f) == 3);
  }
  CHECK_THROWS(witness_P0(3, make_basis(BasisKind::kCanonical, f, 2, std::uint64_t{0}), c));
  CHECK_THROWS(witness_P0(2, can, c));
  CHECK_THROWS(witness_P0(3, can, FieldElement::zero(f)));
}

TEST_CASE("witness relations on descended instances") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto sys = make_instance(3, 13, 5, seed, BasisKind::kRandom);
    const auto top = top_parts(sys);
    const SubspaceBasis basis(sys.params.nu);
    const auto p0 = witness_P0(sys.params);
    const auto rep = verify_witness(top.system, p0, basis, 3);
    CHECK(rep.in_span);
    CHECK(rep.nonzero);
    CHECK(rep.annihilated == std::vector<bool>{true, true, true});
    CHECK(rep.holds());
    // Direct check of one relation and of the squares-vanish degeneracy.
    const auto L = power_linear_form(1, 0, basis);
    CHECK(mul_squares_vanish(L, p0).is_zero());
    const auto v = BoolMonomial::variable(descent_var(0, 2, 5));
    std::vector<FieldBoolPoly::Term> with_v;
    for (const auto& t : p0.terms())
      if (v.divides(t.first)) with_v.push_back(t);
    const auto part = FieldBoolPoly::from_terms(p0.field(), with_v);
    CHECK_FALSE(part.is_zero());
    CHECK(mul_squares_vanish(FieldBoolPoly::from_terms(p0.field(), {{v, 1}}), part).is_zero());
  }
  // A polynomial outside the span is reported, not thrown.
  const auto sys = make_instance(3, 13, 5, 9, BasisKind::kRandom);
  const auto top = top_parts(sys);
  const SubspaceBasis basis(sys.params.nu);
  auto bogus = witness_P0(3, basis, sys.params.c);
  bogus += FieldBoolPoly::from_terms(bogus.field(), {{BoolMonomial::from_local(0b111111, 0), 1}});
  CHECK_FALSE(verify_witness(top.system, bogus, basis, 3).in_span);
}

TEST_CASE("first fall on descended instances") {
  for (std::uint64_t seed = 0; seed < 2; ++seed) {
    CHECK(first_fall(top_parts(make_instance(3, 13, 5, seed, BasisKind::kRandom))).dff == 7u);
    const auto m2 = first_fall(top_parts(make_instance(2, 12, 6, seed, BasisKind::kRandom)));
    CHECK(m2.dim_drop);
    CHECK(m2.dff == 2u);
  }
}

}  // TEST_SUITE
