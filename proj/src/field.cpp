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

#include "sumfall/field.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <stdexcept>
#include <vector>

namespace sumfall {

namespace {

// Remainder of a (arbitrary 64-bit polynomial) modulo f.
std::uint64_t f2_mod(std::uint64_t a, std::uint64_t f) {
  const int df = f2_degree(f);
  for (int da = f2_degree(a); da >= df; da = f2_degree(a)) a ^= f << (da - df);
  return a;
}

std::uint64_t f2_gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a = f2_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

// Multiplication modulo an arbitrary (not necessarily irreducible) degree-n f.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t f, unsigned n) {
  std::uint64_t r = 0;
  const std::uint64_t top = std::uint64_t{1} << n;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & top) a ^= f;
  }
  return r;
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

int f2_degree(std::uint64_t poly) { return poly == 0 ? -1 : 63 - std::countl_zero(poly); }

bool is_irreducible(std::uint64_t poly, unsigned n) {
  if (n == 0 || n > FieldSpec::kMaxDegree || f2_degree(poly) != static_cast<int>(n)) return false;
  if (n == 1) return true;
  // x^(2^k) mod poly for k = 0..n
  std::vector<std::uint64_t> xpow(n + 1);
  xpow[0] = 2;
  for (unsigned k = 1; k <= n; ++k) xpow[k] = mulmod(xpow[k - 1], xpow[k - 1], poly, n);
  if (xpow[n] != 2) return false;
  for (unsigned q : prime_factors(n)) {
    if (f2_gcd(poly, xpow[n / q] ^ 2) != 1) return false;
  }
  return true;
}

std::uint64_t smallest_irreducible(unsigned n) {
  if (n == 0 || n > FieldSpec::kMaxDegree) throw std::invalid_argument("field degree out of range");
  const std::uint64_t top = std::uint64_t{1} << n;
  for (std::uint64_t low = 0; low < top; ++low) {
    if (is_irreducible(top | low, n)) return top | low;
  }
  throw std::logic_error("no irreducible polynomial found");
}

FieldSpec::FieldSpec(unsigned n, std::uint64_t reduction) : n_(n), red_(reduction) {
  if (n == 0 || n > kMaxDegree) throw std::invalid_argument("field degree out of range: " + std::to_string(n));
  if (f2_degree(reduction) != static_cast<int>(n))
    throw std::invalid_argument("reduction polynomial " + hex_string(reduction) + " does not have degree " +
                                std::to_string(n));
  if (!is_irreducible(reduction, n))
    throw std::invalid_argument("reduction polynomial " + hex_string(reduction) + " is reducible");
}

FieldSpec FieldSpec::standard(unsigned n) { return FieldSpec(n, smallest_irreducible(n)); }

FieldSpec FieldSpec::parse(std::string_view text) {
  constexpr std::string_view prefix = "gf2e:n=";
  if (text.substr(0, prefix.size()) != prefix) throw std::invalid_argument("bad field description: " + std::string(text));
  text.remove_prefix(prefix.size());
  const auto colon = text.find(":red=");
  if (colon == std::string_view::npos) throw std::invalid_argument("bad field description: missing red");
  unsigned n = 0;
  const auto nstr = text.substr(0, colon);
  auto [p, ec] = std::from_chars(nstr.data(), nstr.data() + nstr.size(), n);
  if (ec != std::errc{} || p != nstr.data() + nstr.size()) throw std::invalid_argument("bad field degree");
  return FieldSpec(n, parse_hex(text.substr(colon + 5)));
}

std::uint64_t FieldSpec::mul(std::uint64_t a, std::uint64_t b) const { return mulmod(a, b, red_, n_); }

std::uint64_t FieldSpec::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t FieldSpec::inv(std::uint64_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  // Extended Euclid on (red, a): maintain u*a == r (mod red).
  std::uint64_t r0 = red_, r1 = a, u0 = 0, u1 = 1;
  while (r1 != 1) {
    const int shift = f2_degree(r0) - f2_degree(r1);
    if (shift < 0) {
      std::swap(r0, r1);
      std::swap(u0, u1);
      continue;
    }
    r0 ^= r1 << shift;
    u0 ^= u1 << shift;
  }
  return f2_mod(u1, red_) & mask();
}

std::uint64_t FieldSpec::frobenius(std::uint64_t a, std::uint64_t j) const {
  j %= n_;
  for (std::uint64_t i = 0; i < j; ++i) a = sqr(a);
  return a;
}

unsigned FieldSpec::trace(std::uint64_t a) const {
  std::uint64_t t = a;
  std::uint64_t x = a;
  for (unsigned i = 1; i < n_; ++i) {
    x = sqr(x);
    t ^= x;
  }
  return static_cast<unsigned>(t & 1);
}

std::string FieldSpec::to_string() const { return "gf2e:n=" + std::to_string(n_) + ":red=" + hex_string(red_); }

FieldElement::FieldElement(const FieldSpec& spec, std::uint64_t coeffs) : coeffs_(coeffs), spec_(spec) {
  if ((coeffs & ~spec.mask()) != 0) throw std::invalid_argument("coefficient mask exceeds field degree");
}

FieldElement FieldElement::parse(const FieldSpec& spec, std::string_view text) { return {spec, parse_hex(text)}; }

FieldElement FieldElement::inverse() const { return {spec_, spec_.inv(coeffs_)}; }

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  if (!(spec_ == o.spec_)) throw std::invalid_argument("field mismatch in addition");
  coeffs_ ^= o.coeffs_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  if (!(spec_ == o.spec_)) throw std::invalid_argument("field mismatch in multiplication");
  coeffs_ = spec_.mul(coeffs_, o.coeffs_);
  return *this;
}

std::string FieldElement::to_string() const { return hex_string(coeffs_); }

FieldElement frobenius(const FieldElement& a, std::uint64_t j) {
  return {a.spec(), a.spec().frobenius(a.coeffs(), j)};
}

std::optional<FieldElement> solve_artin_schreier(const FieldElement& a) {
  const FieldSpec& f = a.spec();
  if (a.trace() != 0) return std::nullopt;
  const unsigned n = f.degree();
  std::uint64_t t = 0;
  if (n % 2 == 1) {
    // half-trace: sum of a^(4^i), i = 0..(n-1)/2
    std::uint64_t x = a.coeffs();
    for (unsigned i = 0; i <= (n - 1) / 2; ++i) {
      t ^= x;
      x = f.sqr(f.sqr(x));
    }
  } else {
    // Rows of the augmented system [L | a] where column i of L is L(z^i).
    // Row k holds coordinate k of every column plus the right-hand side.
    std::vector<std::uint64_t> rows(n, 0);
    for (unsigned i = 0; i < n; ++i) {
      const std::uint64_t zi = std::uint64_t{1} << i;
      const std::uint64_t img = f.sqr(zi) ^ zi;
      for (unsigned k = 0; k < n; ++k)
        if ((img >> k) & 1) rows[k] |= zi;
    }
    const std::uint64_t rhs_bit = std::uint64_t{1} << n;
    for (unsigned k = 0; k < n; ++k)
      if ((a.coeffs() >> k) & 1) rows[k] |= rhs_bit;
    std::vector<int> pivot_row(n, -1);
    unsigned rank = 0;
    for (unsigned col = 0; col < n && rank < n; ++col) {
      unsigned sel = rank;
      while (sel < n && !((rows[sel] >> col) & 1)) ++sel;
      if (sel == n) continue;
      std::swap(rows[sel], rows[rank]);
      for (unsigned k = 0; k < n; ++k)
        if (k != rank && ((rows[k] >> col) & 1)) rows[k] ^= rows[rank];
      pivot_row[col] = static_cast<int>(rank);
      ++rank;
    }
    for (unsigned k = rank; k < n; ++k)
      if (rows[k] & rhs_bit) return std::nullopt;
    for (unsigned col = 0; col < n; ++col)
      if (pivot_row[col] >= 0 && (rows[pivot_row[col]] & rhs_bit)) t |= std::uint64_t{1} << col;
  }
  if (t & 1) t ^= 1;
  return FieldElement(f, t);
}

std::string hex_string(std::uint64_t v) {
  std::array<char, 17> buf{};
  auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, 16);
  return "0x" + std::string(buf.data(), p);
}

std::uint64_t parse_hex(std::string_view text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) text.remove_prefix(2);
  if (text.empty()) throw std::invalid_argument("empty hex literal");
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v, 16);
  if (ec != std::errc{} || p != text.data() + text.size())
    throw std::invalid_argument("bad hex literal: " + std::string(text));
  return v;
}

}  // namespace sumfall
