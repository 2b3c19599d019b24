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

#include "sumfall/boolpoly.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace sumfall {

namespace {

// Sorts descending and cancels pairs.
std::vector<BoolMonomial> normalize(std::vector<BoolMonomial> monos) {
  std::sort(monos.begin(), monos.end(), GrevlexGreater{});
  std::vector<BoolMonomial> out;
  out.reserve(monos.size());
  for (const auto& m : monos) {
    if (!out.empty() && out.back() == m) {
      out.pop_back();
    } else {
      out.push_back(m);
    }
  }
  return out;
}

bool field_term_greater(const FieldBoolPoly::Term& a, const FieldBoolPoly::Term& b) {
  return grevlex_greater(a.first, b.first);
}

}  // namespace

BoolMonomial BoolMonomial::variable(unsigned var) {
  if (var >= kMaxVars) throw std::invalid_argument("Boolean variable index out of range");
  BoolMonomial m;
  m.w_[var / 64] = std::uint64_t{1} << (var % 64);
  return m;
}

BoolMonomial BoolMonomial::from_indices(std::span<const unsigned> vars) {
  BoolMonomial m;
  for (unsigned v : vars) m = m * variable(v);
  return m;
}

BoolMonomial BoolMonomial::from_local(std::uint64_t local, unsigned offset) {
  if (local == 0) return {};
  if (offset + static_cast<unsigned>(64 - std::countl_zero(local)) > kMaxVars)
    throw std::invalid_argument("Boolean variable index out of range");
  if (offset >= 64) return BoolMonomial(0, local << (offset - 64));
  if (offset == 0) return BoolMonomial(local, 0);
  return BoolMonomial(local << offset, local >> (64 - offset));
}

unsigned BoolMonomial::span_end() const {
  if (w_[1] != 0) return 128 - static_cast<unsigned>(std::countl_zero(w_[1]));
  return 64 - static_cast<unsigned>(std::countl_zero(w_[0]));
}

std::vector<unsigned> BoolMonomial::indices() const {
  std::vector<unsigned> out;
  out.reserve(degree());
  for (unsigned i = 0; i < 2; ++i)
    for (std::uint64_t w = w_[i]; w != 0; w &= w - 1) out.push_back(64 * i + static_cast<unsigned>(std::countr_zero(w)));
  return out;
}

std::string BoolMonomial::to_string() const {
  std::string out = "(";
  bool first = true;
  for (unsigned v : indices()) {
    if (!first) out += ',';
    out += std::to_string(v);
    first = false;
  }
  return out + ")";
}

bool grevlex_greater(BoolMonomial a, BoolMonomial b) {
  const unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  std::uint64_t diff = a.word(0) ^ b.word(0);
  std::uint64_t bw = b.word(0);
  if (diff == 0) {
    diff = a.word(1) ^ b.word(1);
    bw = b.word(1);
  }
  return (bw & diff & (~diff + 1)) != 0;
}

BoolPoly BoolPoly::from_monomials(std::vector<BoolMonomial> monos) { return from_sorted(normalize(std::move(monos))); }

BoolPoly BoolPoly::from_sorted(std::vector<BoolMonomial> monos) {
  BoolPoly p;
  p.terms_ = std::move(monos);
  return p;
}

bool BoolPoly::is_homogeneous() const {
  return terms_.empty() || terms_.back().degree() == terms_.front().degree();
}

BoolPoly BoolPoly::homogeneous_part(unsigned d) const {
  std::vector<BoolMonomial> out;
  for (const auto& m : terms_)
    if (m.degree() == d) out.push_back(m);
  return from_sorted(std::move(out));
}

unsigned BoolPoly::span_end() const {
  unsigned e = 0;
  for (const auto& m : terms_) e = std::max(e, m.span_end());
  return e;
}

bool BoolPoly::eval(BoolMonomial point) const {
  bool v = false;
  for (const auto& m : terms_) v ^= m.divides(point);
  return v;
}

BoolPoly& BoolPoly::operator+=(const BoolPoly& o) {
  std::vector<BoolMonomial> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() && b != o.terms_.end()) {
    if (*a == *b) {
      ++a;
      ++b;
    } else if (grevlex_greater(*a, *b)) {
      out.push_back(*a++);
    } else {
      out.push_back(*b++);
    }
  }
  out.insert(out.end(), a, terms_.end());
  out.insert(out.end(), b, o.terms_.end());
  terms_ = std::move(out);
  return *this;
}

BoolPoly BoolPoly::mul_multilinear(BoolMonomial u) const {
  std::vector<BoolMonomial> out;
  out.reserve(terms_.size());
  for (const auto& m : terms_) out.push_back(m * u);
  return from_monomials(std::move(out));
}

BoolPoly BoolPoly::mul_squares_vanish(BoolMonomial u) const {
  std::vector<BoolMonomial> out;
  out.reserve(terms_.size());
  // Disjoint products preserve relative grevlex order, so no resort is needed.
  for (const auto& m : terms_)
    if (m.disjoint(u)) out.push_back(m * u);
  return from_sorted(std::move(out));
}

BoolPoly mul_multilinear(const BoolPoly& a, const BoolPoly& b) {
  std::vector<BoolMonomial> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) out.push_back(x * y);
  return BoolPoly::from_monomials(std::move(out));
}

std::string BoolPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& m : terms_) {
    if (!out.empty()) out += ',';
    out += m.to_string();
  }
  return out;
}

BoolPoly BoolPoly::parse(std::string_view text) {
  while (!text.empty() && (text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  if (text == "0") return {};
  std::vector<BoolMonomial> monos;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] != '(') throw std::invalid_argument("expected '(' in Boolean polynomial");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw std::invalid_argument("unterminated monomial");
    std::vector<unsigned> vars;
    std::string_view body = text.substr(pos + 1, close - pos - 1);
    while (!body.empty()) {
      const auto comma = body.find(',');
      const auto item = body.substr(0, comma);
      unsigned v = 0;
      auto [p, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || p != item.data() + item.size()) throw std::invalid_argument("bad variable index");
      vars.push_back(v);
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
    }
    monos.push_back(BoolMonomial::from_indices(vars));
    pos = close + 1;
    if (pos < text.size()) {
      if (text[pos] != ',') throw std::invalid_argument("expected ',' between monomials");
      ++pos;
    }
  }
  return from_monomials(std::move(monos));
}

FieldBoolPoly FieldBoolPoly::from_terms(const FieldSpec& field, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), field_term_greater);
  FieldBoolPoly p(field);
  p.terms_.reserve(terms.size());
  for (const auto& [m, c] : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == m) {
      p.terms_.back().second ^= c;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (c != 0) {
      p.terms_.emplace_back(m, c);
    }
  }
  return p;
}

FieldBoolPoly FieldBoolPoly::embed(const FieldSpec& field, const BoolPoly& p) {
  FieldBoolPoly out(field);
  out.terms_.reserve(p.num_terms());
  for (const auto& m : p.terms()) out.terms_.emplace_back(m, 1);
  return out;
}

FieldElement FieldBoolPoly::coefficient(BoolMonomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), Term{m, 0}, field_term_greater);
  if (it != terms_.end() && it->first == m) return {field_, it->second};
  return FieldElement::zero(field_);
}

bool FieldBoolPoly::is_homogeneous() const {
  return terms_.empty() || terms_.back().first.degree() == terms_.front().first.degree();
}

BoolPoly FieldBoolPoly::coordinate(unsigned k) const {
  std::vector<BoolMonomial> out;
  for (const auto& [m, c] : terms_)
    if ((c >> k) & 1) out.push_back(m);
  return BoolPoly::from_sorted(std::move(out));
}

FieldBoolPoly& FieldBoolPoly::operator+=(const FieldBoolPoly& o) {
  if (!(field_ == o.field_)) throw std::invalid_argument("field mismatch");
  std::vector<Term> all = terms_;
  all.insert(all.end(), o.terms_.begin(), o.terms_.end());
  *this = from_terms(field_, std::move(all));
  return *this;
}

FieldBoolPoly FieldBoolPoly::scaled(const FieldElement& c) const {
  if (!(c.spec() == field_)) throw std::invalid_argument("field mismatch");
  FieldBoolPoly out(field_);
  if (c.is_zero()) return out;
  out.terms_ = terms_;
  for (auto& t : out.terms_) t.second = field_.mul(t.second, c.coeffs());
  return out;
}

FieldBoolPoly mul_squares_vanish(const FieldBoolPoly& a, const FieldBoolPoly& b) {
  if (!(a.field_ == b.field_)) throw std::invalid_argument("field mismatch");
  std::unordered_map<BoolMonomial, std::uint64_t, BoolMonomialHash> acc;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_)
      if (ma.disjoint(mb)) acc[ma * mb] ^= a.field_.mul(ca, cb);
  std::vector<FieldBoolPoly::Term> terms(acc.begin(), acc.end());
  return FieldBoolPoly::from_terms(a.field_, std::move(terms));
}

std::uint64_t binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("binomial overflow");
  }
  return static_cast<std::uint64_t>(r);
}

std::uint64_t monomial_rank(BoolMonomial m, unsigned num_vars) {
  // Colex rank of the variable set under the reversal v -> num_vars - 1 - v.
  std::vector<unsigned> rev;
  for (unsigned v : m.indices()) {
    if (v >= num_vars) throw std::invalid_argument("monomial outside the variable range");
    rev.push_back(num_vars - 1 - v);
  }
  std::sort(rev.begin(), rev.end());
  std::uint64_t rank = 0;
  for (unsigned i = 0; i < rev.size(); ++i) rank += binomial(rev[i], i + 1);
  return rank;
}

std::vector<BoolMonomial> monomials_of_degree(unsigned num_vars, unsigned k) {
  std::vector<BoolMonomial> out;
  if (k > num_vars) return out;
  out.reserve(binomial(num_vars, k));
  std::vector<unsigned> c(k);
  for (unsigned i = 0; i < k; ++i) c[i] = i;
  for (;;) {
    BoolMonomial m;
    for (unsigned v : c) m = m * BoolMonomial::variable(num_vars - 1 - v);
    out.push_back(m);
    // colex successor
    unsigned i = 0;
    while (i < k && c[i] + 1 == (i + 1 < k ? c[i + 1] : num_vars)) ++i;
    if (i == k) break;
    ++c[i];
    for (unsigned j = 0; j < i; ++j) c[j] = j;
  }
  return out;
}

}  // namespace sumfall
