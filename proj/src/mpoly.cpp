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

#include "sumfall/mpoly.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <optional>
#include <stdexcept>
#include <unordered_map>

namespace sumfall {

namespace {

unsigned packed_degree(std::uint64_t p) {
  // Horizontal byte sum.
  p = (p & 0x00ff00ff00ff00ffULL) + ((p >> 8) & 0x00ff00ff00ff00ffULL);
  p = (p & 0x0000ffff0000ffffULL) + ((p >> 16) & 0x0000ffff0000ffffULL);
  p = (p & 0x00000000ffffffffULL) + (p >> 32);
  return static_cast<unsigned>(p);
}

bool term_greater(const MPoly::Term& a, const MPoly::Term& b) {
  return grevlex_greater(a.first, b.first, Monomial::kMaxVars);
}

}  // namespace

Monomial Monomial::variable(unsigned var, unsigned exponent) {
  if (var >= kMaxVars) throw std::invalid_argument("variable index out of range");
  if (exponent > kMaxExponent) throw std::overflow_error("exponent out of range");
  return Monomial(std::uint64_t{exponent} << (8 * var));
}

Monomial Monomial::from_exponents(std::span<const unsigned> exponents) {
  if (exponents.size() > kMaxVars) throw std::invalid_argument("too many variables");
  Monomial m;
  for (unsigned i = 0; i < exponents.size(); ++i) m = m * variable(i, exponents[i]);
  return m;
}

Monomial Monomial::with_exponent(unsigned var, unsigned exponent) const {
  const std::uint64_t cleared = packed_ & ~(std::uint64_t{0xff} << (8 * var));
  return Monomial(cleared) * variable(var, exponent);
}

unsigned Monomial::total_degree() const { return packed_degree(packed_); }

bool Monomial::divides(Monomial other) const {
  for (unsigned i = 0; i < kMaxVars; ++i)
    if (exponent(i) > other.exponent(i)) return false;
  return true;
}

Monomial Monomial::operator*(Monomial other) const {
  std::uint64_t sum = 0;
  for (unsigned v = 0; v < kMaxVars; ++v) {
    const unsigned e = exponent(v) + other.exponent(v);
    if (e > kMaxExponent) throw std::overflow_error("monomial exponent overflow");
    sum |= std::uint64_t{e} << (8 * v);
  }
  return Monomial(sum);
}

bool grevlex_greater(Monomial a, Monomial b, unsigned num_vars) {
  const unsigned da = a.total_degree(), db = b.total_degree();
  if (da != db) return da > db;
  for (unsigned i = num_vars; i-- > 0;) {
    const unsigned ea = a.exponent(i), eb = b.exponent(i);
    if (ea != eb) return ea < eb;
  }
  return false;
}

MPoly::MPoly(const PolyRing& ring) : ring_(ring) {
  if (ring.num_vars > Monomial::kMaxVars) throw std::invalid_argument("too many variables for MPoly");
}

MPoly::MPoly(const PolyRing& ring, std::vector<Term> sorted_terms) : ring_(ring), terms_(std::move(sorted_terms)) {}

MPoly MPoly::constant(const PolyRing& ring, const FieldElement& c) { return monomial(ring, Monomial{}, c); }

MPoly MPoly::variable(const PolyRing& ring, unsigned var) {
  if (var >= ring.num_vars) throw std::invalid_argument("variable index out of range");
  return monomial(ring, Monomial::variable(var), FieldElement::one(ring.field));
}

MPoly MPoly::monomial(const PolyRing& ring, Monomial m, const FieldElement& c) {
  if (!(c.spec() == ring.field)) throw std::invalid_argument("field mismatch");
  MPoly p(ring);
  if (!c.is_zero()) p.terms_.emplace_back(m, c.coeffs());
  return p;
}

MPoly MPoly::from_terms(const PolyRing& ring, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_greater);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (const auto& [m, c] : terms) {
    for (unsigned v = ring.num_vars; v < Monomial::kMaxVars; ++v)
      if (m.exponent(v) != 0) throw std::invalid_argument("monomial uses a variable outside the ring");
    if (!out.empty() && out.back().first == m) {
      out.back().second ^= c;
      if (out.back().second == 0) out.pop_back();
    } else if ((c & ring.field.mask()) != 0) {
      out.emplace_back(m, c & ring.field.mask());
    }
  }
  return MPoly(ring, std::move(out));
}

void MPoly::check_ring(const MPoly& o) const {
  if (!(ring_ == o.ring_)) throw std::invalid_argument("polynomial ring mismatch");
}

FieldElement MPoly::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{m, 0}, term_greater);
  if (it != terms_.end() && it->first == m) return {ring_.field, it->second};
  return FieldElement::zero(ring_.field);
}

int MPoly::degree_in(unsigned var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.first.exponent(var)));
  return d;
}

int MPoly::total_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.total_degree()); }

FieldElement MPoly::eval(std::span<const FieldElement> point) const {
  if (point.size() != ring_.num_vars) throw std::invalid_argument("evaluation point has wrong length");
  const FieldSpec& f = ring_.field;
  std::vector<std::vector<std::uint64_t>> powers(ring_.num_vars);
  for (unsigned v = 0; v < ring_.num_vars; ++v) {
    if (!(point[v].spec() == f)) throw std::invalid_argument("field mismatch in evaluation point");
    const int deg = degree_in(v);
    powers[v].assign(static_cast<std::size_t>(std::max(deg, 0)) + 1, 1);
    for (int e = 1; e <= deg; ++e) powers[v][e] = f.mul(powers[v][e - 1], point[v].coeffs());
  }
  std::uint64_t acc = 0;
  for (const auto& [m, c] : terms_) {
    std::uint64_t t = c;
    for (unsigned v = 0; v < ring_.num_vars; ++v)
      if (const unsigned e = m.exponent(v)) t = f.mul(t, powers[v][e]);
    acc ^= t;
  }
  return {f, acc};
}

MPoly MPoly::rename(unsigned from, unsigned to) const {
  if (from >= ring_.num_vars || to >= ring_.num_vars) throw std::invalid_argument("variable index out of range");
  if (from == to) return *this;
  if (degree_in(to) > 0) throw std::invalid_argument("rename target variable is in use");
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& [m, c] : terms_) terms.emplace_back(m.with_exponent(from, 0).with_exponent(to, m.exponent(from)), c);
  return from_terms(ring_, std::move(terms));
}

MPoly MPoly::with_num_vars(unsigned num_vars) const {
  return from_terms(PolyRing{num_vars, ring_.field}, terms_);
}

MPoly& MPoly::operator+=(const MPoly& o) {
  check_ring(o);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && term_greater(*a, *b))) {
      out.push_back(*a++);
    } else if (a == terms_.end() || term_greater(*b, *a)) {
      out.push_back(*b++);
    } else {
      if (const std::uint64_t c = a->second ^ b->second) out.emplace_back(a->first, c);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

MPoly& MPoly::operator*=(const FieldElement& c) {
  if (!(c.spec() == ring_.field)) throw std::invalid_argument("field mismatch");
  if (c.is_zero()) {
    terms_.clear();
  } else {
    for (auto& t : terms_) t.second = ring_.field.mul(t.second, c.coeffs());
  }
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_ring(b);
  const FieldSpec& f = a.ring_.field;
  if (a.is_zero() || b.is_zero()) return MPoly(a.ring_);
  std::unordered_map<std::uint64_t, std::uint64_t> acc;
  acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 16);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) acc[(ma * mb).packed()] ^= f.mul(ca, cb);
  std::vector<MPoly::Term> terms;
  terms.reserve(acc.size());
  for (const auto& [m, c] : acc) {
    if (c == 0) continue;
    terms.emplace_back(Monomial::from_packed(m), c);
  }
  std::sort(terms.begin(), terms.end(), term_greater);
  return MPoly(a.ring_, std::move(terms));
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    if (!out.empty()) out += " + ";
    std::string term;
    if (c != 1 || m.is_one()) term = hex_string(c);
    for (unsigned v = 0; v < ring_.num_vars; ++v) {
      if (const unsigned e = m.exponent(v)) {
        if (!term.empty()) term += '*';
        term += 'x' + std::to_string(v + 1) + '^' + std::to_string(e);
      }
    }
    out += term;
  }
  return out;
}

MPoly MPoly::parse(const PolyRing& ring, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\n' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\n' || s.back() == '\r')) s.remove_suffix(1);
    return s;
  };
  auto to_uint = [](std::string_view s) {
    unsigned v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || s.empty())
      throw std::invalid_argument("bad integer in polynomial: " + std::string(s));
    return v;
  };
  text = trim(text);
  if (text == "0") return MPoly(ring);
  std::vector<Term> terms;
  while (!text.empty()) {
    const auto plus = text.find(" + ");
    const std::string_view term = trim(text.substr(0, plus));
    text = plus == std::string_view::npos ? std::string_view{} : text.substr(plus + 3);
    if (term.empty()) throw std::invalid_argument("empty term in polynomial");
    std::uint64_t coeff = 1;
    Monomial m;
    std::string_view rest = term;
    while (!rest.empty()) {
      const auto star = rest.find('*');
      const std::string_view factor = rest.substr(0, star);
      rest = star == std::string_view::npos ? std::string_view{} : rest.substr(star + 1);
      if (factor.size() >= 2 && factor[0] == '0' && factor[1] == 'x') {
        coeff = ring.field.mul(coeff, parse_hex(factor));
      } else if (!factor.empty() && factor[0] == 'x') {
        const auto caret = factor.find('^');
        const unsigned var = to_uint(factor.substr(1, caret == std::string_view::npos ? factor.npos : caret - 1));
        const unsigned e = caret == std::string_view::npos ? 1 : to_uint(factor.substr(caret + 1));
        if (var == 0 || var > ring.num_vars) throw std::invalid_argument("variable out of range: " + std::string(factor));
        m = m * Monomial::variable(var - 1, e);
      } else {
        throw std::invalid_argument("bad factor in polynomial: " + std::string(factor));
      }
    }
    if ((coeff & ~ring.field.mask()) != 0) throw std::invalid_argument("coefficient exceeds field degree");
    terms.emplace_back(m, coeff);
  }
  return from_terms(ring, std::move(terms));
}

std::vector<MPoly> coeffs_in_x(const MPoly& f, unsigned var) {
  const int deg = std::max(f.degree_in(var), 0);
  std::vector<std::vector<MPoly::Term>> buckets(static_cast<std::size_t>(deg) + 1);
  for (const auto& [m, c] : f.terms()) buckets[m.exponent(var)].emplace_back(m.with_exponent(var, 0), c);
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(MPoly::from_terms(f.ring(), std::move(b)));
  return out;
}

MPoly from_coeffs_in_x(std::span<const MPoly> coeffs, unsigned var) {
  if (coeffs.empty()) throw std::invalid_argument("no coefficients");
  MPoly out(coeffs.front().ring());
  for (std::size_t e = 0; e < coeffs.size(); ++e) {
    if (coeffs[e].degree_in(var) > 0) throw std::invalid_argument("coefficient depends on the eliminated variable");
    out += coeffs[e] * MPoly::monomial(out.ring(), Monomial::variable(var, static_cast<unsigned>(e)),
                                       FieldElement::one(out.field()));
  }
  return out;
}

PolyMatrix::PolyMatrix(const PolyRing& ring, std::size_t size)
    : ring_(ring), size_(size), entries_(size * size, MPoly(ring)) {}

void PolyMatrix::set(std::size_t r, std::size_t c, MPoly p) {
  if (!(p.ring() == ring_)) throw std::invalid_argument("matrix entry ring mismatch");
  entries_[r * size_ + c] = std::move(p);
}

void PolyMatrix::swap_rows(std::size_t a, std::size_t b) {
  for (std::size_t c = 0; c < size_; ++c) std::swap(entries_[a * size_ + c], entries_[b * size_ + c]);
}

MPoly det_poly(const PolyMatrix& m) {
  const std::size_t n = m.size();
  if (n > 20) throw std::invalid_argument("determinant size too large");
  const PolyRing& ring = m.ring();
  if (n == 0) return MPoly::constant(ring, FieldElement::one(ring.field));
  // minors[mask]: determinant of the last popcount(mask) rows restricted to
  // the columns in mask. Characteristic 2, so no signs.
  std::vector<std::optional<MPoly>> minors(std::size_t{1} << n);
  minors[0] = MPoly::constant(ring, FieldElement::one(ring.field));
  auto solve = [&](auto&& self, std::uint32_t mask) -> const MPoly& {
    if (minors[mask]) return *minors[mask];
    const std::size_t row = n - static_cast<std::size_t>(std::popcount(mask));
    MPoly acc(ring);
    for (std::size_t c = 0; c < n; ++c) {
      if (!((mask >> c) & 1) || m.at(row, c).is_zero()) continue;
      const MPoly& sub = self(self, mask & ~(std::uint32_t{1} << c));
      if (!sub.is_zero()) acc += m.at(row, c) * sub;
    }
    minors[mask] = std::move(acc);
    return *minors[mask];
  };
  return solve(solve, static_cast<std::uint32_t>((std::size_t{1} << n) - 1));
}

PolyMatrix sylvester_matrix(const MPoly& f, const MPoly& g, unsigned var) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of a zero polynomial");
  if (!(f.ring() == g.ring())) throw std::invalid_argument("polynomial ring mismatch");
  const auto fc = coeffs_in_x(f, var);
  const auto gc = coeffs_in_x(g, var);
  const std::size_t k = fc.size() - 1, l = gc.size() - 1;
  PolyMatrix syl(f.ring(), k + l);
  for (std::size_t r = 0; r < l; ++r)
    for (std::size_t e = 0; e <= k; ++e) syl.set(r, r + (k - e), fc[e]);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t e = 0; e <= l; ++e) syl.set(l + r, r + (l - e), gc[e]);
  return syl;
}

MPoly sylvester_resultant(const MPoly& f, const MPoly& g, unsigned var) {
  return det_poly(sylvester_matrix(f, g, var));
}

}  // namespace sumfall
