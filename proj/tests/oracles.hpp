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

// Unpacked reference implementations shared by the unit tests. Everything
// here is deliberately slow and written without the library's packed code.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <unordered_set>
#include <vector>

namespace oracle {

using Bits = std::vector<int>;

inline Bits to_bits(std::uint64_t v, unsigned len) {
  Bits b(len);
  for (unsigned i = 0; i < len; ++i) b[i] = static_cast<int>((v >> i) & 1);
  return b;
}

inline std::uint64_t from_bits(const Bits& b) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] & 1) v |= std::uint64_t{1} << i;
  return v;
}

// Coefficient-list product of two GF(2^n) elements, then long division by red.
inline std::uint64_t field_mul(std::uint64_t a, std::uint64_t b, unsigned n, std::uint64_t red) {
  const Bits x = to_bits(a, n), y = to_bits(b, n), r = to_bits(red, n + 1);
  Bits prod(2 * n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) prod[i + j] ^= x[i] & y[j];
  for (unsigned top = 2 * n - 1; top >= n; --top) {
    if (!prod[top]) continue;
    for (unsigned k = 0; k <= n; ++k) prod[top - n + k] ^= r[k];
  }
  prod.resize(n);
  return from_bits(prod);
}

inline std::uint64_t field_pow(std::uint64_t a, std::uint64_t e, unsigned n, std::uint64_t red) {
  std::uint64_t acc = 1;
  for (int bit = 63; bit >= 0; --bit) {
    acc = field_mul(acc, acc, n, red);
    if ((e >> bit) & 1) acc = field_mul(acc, a, n, red);
  }
  return acc;
}

// Rank over F2 by elimination on an int matrix.
inline std::size_t f2_rank(std::vector<Bits> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && !m[p][c]) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c])
        for (std::size_t k = 0; k < cols; ++k) m[r][k] ^= m[rank][k];
    ++rank;
  }
  return rank;
}

// All degree-k subsets of {0..n-1} as bit masks, in increasing numeric order.
inline std::vector<std::uint64_t> masks_of_degree(unsigned n, unsigned k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m)
    if (static_cast<unsigned>(__builtin_popcountll(m)) == k) out.push_back(m);
  return out;
}

// Exhaustive first fall degree of homogeneous degree-d generators given as
// lists of variable masks, with y_i^2 = 0. Walks every module vector of each
// degree in Gray-code order to count the kernel, and closes the trivial
// generators under addition to count U. Returns {dff or 0, feasible}.
struct BruteResult {
  unsigned dff = 0;
  bool feasible = true;
};

inline BruteResult brute_first_fall(const std::vector<std::vector<std::uint64_t>>& gens, unsigned n, unsigned d,
                             unsigned j_max, unsigned max_bits) {
  const std::size_t r = gens.size();
  for (unsigned j = d + 1; j <= j_max; ++j) {
    const auto mult = masks_of_degree(n, j - d);
    const auto cols = masks_of_degree(n, j);
    std::map<std::uint64_t, std::size_t> col_of;
    for (std::size_t i = 0; i < cols.size(); ++i) col_of[cols[i]] = i;
    const std::size_t dim = r * mult.size();
    if (dim > max_bits) return {0, false};
    // Image of each basis vector t * e_i, packed 64 columns per word.
    const std::size_t words = (cols.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> img(dim, std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t a = 0; a < mult.size(); ++a)
        for (std::uint64_t mono : gens[i])
          if ((mono & mult[a]) == 0) {
            const std::size_t c = col_of[mono | mult[a]];
            img[i * mult.size() + a][c / 64] ^= std::uint64_t{1} << (c % 64);
          }
    std::vector<std::uint64_t> cur(words, 0);
    std::size_t kernel = 1;  // the zero vector
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << dim); ++g) {
      const unsigned flip = static_cast<unsigned>(__builtin_ctzll(g));
      std::uint64_t any = 0;
      for (std::size_t w = 0; w < words; ++w) any |= (cur[w] ^= img[flip][w]);
      kernel += any == 0;
    }
    // Trivial module: w * (h_k e_i + h_i e_k) and w * h_i e_i for monomials w.
    std::vector<std::uint64_t> triv_gens;
    if (j >= 2 * d) {
      const auto ws = masks_of_degree(n, j - 2 * d);
      std::map<std::uint64_t, std::size_t> mult_of;
      for (std::size_t a = 0; a < mult.size(); ++a) mult_of[mult[a]] = a;
      auto put = [&](std::uint64_t& vec, std::size_t slot, const std::vector<std::uint64_t>& h, std::uint64_t w) {
        for (std::uint64_t mono : h)
          if ((mono & w) == 0) vec ^= std::uint64_t{1} << (slot * mult.size() + mult_of[mono | w]);
      };
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k <= i; ++k)
          for (std::uint64_t w : ws) {
            std::uint64_t vec = 0;
            put(vec, i, gens[k], w);
            if (k != i) put(vec, k, gens[i], w);
            triv_gens.push_back(vec);
          }
    }
    std::unordered_set<std::uint64_t> span{0};
    for (std::uint64_t v : triv_gens) {
      if (span.count(v)) continue;
      std::vector<std::uint64_t> add;
      for (std::uint64_t s : span) add.push_back(s ^ v);
      span.insert(add.begin(), add.end());
    }
    if (kernel > span.size()) return {j, true};
  }
  return {0, true};
}

inline std::vector<std::vector<std::uint64_t>> random_system(std::mt19937_64& rng, unsigned n, unsigned d, unsigned r,
                                                      unsigned terms) {
  const auto all = masks_of_degree(n, d);
  std::vector<std::vector<std::uint64_t>> gens;
  for (;;) {
    gens.clear();
    for (unsigned i = 0; i < r; ++i) {
      std::vector<std::uint64_t> h;
      // A varying toggle count avoids getting stuck in an even-weight subspace.
      const unsigned count = 1 + static_cast<unsigned>(rng() % terms);
      for (unsigned t = 0; t < count; ++t) {
        const std::uint64_t m = all[rng() % all.size()];
        auto it = std::find(h.begin(), h.end(), m);
        if (it == h.end()) h.push_back(m);
        else h.erase(it);
      }
      gens.push_back(h);
    }
    std::vector<Bits> rows;
    for (const auto& h : gens) {
      Bits row(all.size(), 0);
      for (auto m : h) row[std::find(all.begin(), all.end(), m) - all.begin()] = 1;
      rows.push_back(row);
    }
    if (f2_rank(rows) == r) return gens;
  }
}

}  // namespace oracle
