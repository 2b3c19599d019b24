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

#include "sumfall/groebner.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <deque>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace sumfall {

std::optional<unsigned> dff_empirical(const StepLog& log) {
  if (log.steps.empty()) throw std::invalid_argument("empty step log");
  for (const auto& s : log.steps)
    if (s.falls > 0) return s.degree;
  return std::nullopt;
}

unsigned dreg_empirical(const StepLog& log) {
  if (log.steps.empty()) throw std::invalid_argument("empty step log");
  unsigned d = 0;
  for (const auto& s : log.steps) d = std::max(d, s.degree);
  return d;
}

namespace {

bool contains_mono(BoolMonomial big, BoolMonomial small) { return small.divides(big); }

BoolPoly field_spoly(const BoolPoly& g, unsigned v) { return g.mul_multilinear(BoolMonomial::variable(v)) + g; }

BoolPoly regular_spoly(const BoolPoly& f, const BoolPoly& g) {
  const BoolMonomial l = f.leading() * g.leading();
  return f.mul_multilinear(l / f.leading()) + g.mul_multilinear(l / g.leading());
}

// Compact ids for the monomials of one matrix. Small monomial spaces use an
// arithmetic key (degree offset + colex rank) into a flat table.
class ColumnMap {
 public:
  static constexpr std::uint64_t kFlatLimit = std::uint64_t{1} << 22;

  ColumnMap(unsigned num_vars, unsigned max_deg) : n_(num_vars) {
    std::uint64_t total = 0;
    bool flat = num_vars <= 64;
    if (flat) {
      binom_.assign((num_vars + 1) * (max_deg + 2), 0);
      for (unsigned a = 0; a <= num_vars; ++a)
        for (unsigned b = 0; b <= max_deg + 1; ++b) binom_[a * (max_deg + 2) + b] = binomial(a, b);
      stride_ = max_deg + 2;
      for (unsigned e = 0; e <= max_deg && flat; ++e) {
        offset_.push_back(total);
        total += binomial(num_vars, e);
        flat = total <= kFlatLimit;
      }
    }
    if (flat) slots_.assign(total, -1);
  }

  // Id of m, and whether it was just added.
  std::pair<std::uint32_t, bool> add(BoolMonomial m) {
    if (!slots_.empty()) {
      std::int32_t& s = slots_[key(m)];
      if (s >= 0) return {static_cast<std::uint32_t>(s), false};
      s = static_cast<std::int32_t>(monos_.size());
    } else {
      auto [it, inserted] = hashed_.emplace(m, static_cast<std::uint32_t>(monos_.size()));
      if (!inserted) return {it->second, false};
    }
    monos_.push_back(m);
    return {static_cast<std::uint32_t>(monos_.size() - 1), true};
  }

  std::uint32_t at(BoolMonomial m) const {
    if (!slots_.empty()) return static_cast<std::uint32_t>(slots_[key(m)]);
    return hashed_.at(m);
  }

  const std::vector<BoolMonomial>& monos() const { return monos_; }

 private:
  std::uint64_t key(BoolMonomial m) const {
    // Highest variable first gives the reversed indices in ascending order.
    std::uint64_t rank = 0;
    unsigned i = 1;
    for (std::uint64_t w = m.word(0); w != 0; ++i) {
      const unsigned v = 63 - static_cast<unsigned>(std::countl_zero(w));
      w &= ~(std::uint64_t{1} << v);
      rank += binom_[(n_ - 1 - v) * stride_ + i];
    }
    return offset_[i - 1] + rank;
  }

  unsigned n_;
  unsigned stride_ = 0;
  std::vector<std::uint64_t> binom_;
  std::vector<std::uint64_t> offset_;
  std::vector<std::int32_t> slots_;
  std::unordered_map<BoolMonomial, std::uint32_t, BoolMonomialHash> hashed_;
  std::vector<BoolMonomial> monos_;
};

struct Pair {
  unsigned degree;
  std::size_t a;
  std::size_t b;  // second basis index, or the variable of a field pair
  bool field;
  BoolMonomial lcm;
};

struct RowSource {
  BoolMonomial t;
  const BoolPoly* p;
  friend bool operator==(const RowSource&, const RowSource&) = default;
};

struct RowSourceHash {
  std::size_t operator()(const RowSource& r) const {
    return r.t.hash() * 31 + std::hash<const void*>{}(r.p);
  }
};

inline void xor_words(std::uint64_t* dst, const std::uint64_t* src, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) dst[k] ^= src[k];
}

inline unsigned extract_bits(const std::uint64_t* row, std::size_t start, unsigned k) {
  const std::size_t w = start / 64, b = start % 64;
  std::uint64_t v = row[w] >> b;
  if (b + k > 64) v |= row[w + 1] << (64 - b);
  return static_cast<unsigned>(v & ((std::uint64_t{1} << k) - 1));
}

class Engine {
 public:
  Engine(std::span<const BoolPoly> inputs, const GroebnerBudget& budget)
      : inputs_(inputs.begin(), inputs.end()), budget_(budget), start_(std::chrono::steady_clock::now()) {
    inputs_.erase(std::remove_if(inputs_.begin(), inputs_.end(), [](const BoolPoly& p) { return p.is_zero(); }),
                  inputs_.end());
    std::stable_sort(inputs_.begin(), inputs_.end(),
                     [](const BoolPoly& x, const BoolPoly& y) { return x.degree() < y.degree(); });
    for (const auto& p : inputs_) num_vars_ = std::max(num_vars_, p.span_end());
  }

  GBResult run() {
    GBResult res;
    std::size_t next_input = 0;
    while (!unit_ && (next_input < inputs_.size() || !pairs_.empty())) {
      unsigned deg = ~0u;
      if (next_input < inputs_.size()) deg = static_cast<unsigned>(inputs_[next_input].degree());
      for (const auto& p : pairs_) deg = std::min(deg, p.degree);
      if (deg > budget_.max_degree) {
        res.budget_exhausted = true;
        res.exhausted_reason = "degree " + std::to_string(deg) + " exceeds max_degree";
        break;
      }
      if (elapsed() > budget_.max_seconds) {
        res.budget_exhausted = true;
        res.exhausted_reason = "time limit";
        break;
      }
      std::vector<RowSource> sources;
      while (next_input < inputs_.size() && static_cast<unsigned>(inputs_[next_input].degree()) == deg)
        sources.push_back({BoolMonomial{}, &inputs_[next_input++]});
      std::vector<Pair> rest;
      for (const auto& p : pairs_) {
        if (p.degree != deg) {
          rest.push_back(p);
          continue;
        }
        if (p.field) {
          sources.push_back({BoolMonomial::variable(static_cast<unsigned>(p.b)), &basis_[p.a]});
        } else {
          sources.push_back({p.lcm / basis_[p.a].leading(), &basis_[p.a]});
          sources.push_back({p.lcm / basis_[p.b].leading(), &basis_[p.b]});
        }
      }
      pairs_ = std::move(rest);
      GroebnerStep step;
      step.degree = deg;
      std::vector<BoolPoly> fresh;
      if (!reduce_step(sources, deg, step, fresh)) {
        res.budget_exhausted = true;
        res.exhausted_reason = fail_reason_;
        break;
      }
      // basis_ may reallocate below; sources are dead by now.
      for (auto& h : fresh) {
        if (h.degree() < static_cast<int>(deg)) ++step.falls;
        insert(std::move(h));
      }
      step.new_polys = fresh.size();
      res.log.steps.push_back(step);
    }
    std::vector<BoolPoly> active;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (active_[i]) active.push_back(basis_[i]);
    // A partial basis can be huge and is not worth inter-reducing.
    res.basis = res.budget_exhausted ? std::move(active) : reduce_basis(std::move(active));
    return res;
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

  bool out_of_time() const { return elapsed() > budget_.max_seconds; }

  // Builds and eliminates one matrix. Returns false if a budget trips.
  bool reduce_step(const std::vector<RowSource>& raw_sources, unsigned deg, GroebnerStep& step,
                   std::vector<BoolPoly>& fresh) {
    std::vector<RowSource> sources;
    {
      std::unordered_set<RowSource, RowSourceHash> seen;
      for (const auto& s : raw_sources)
        if (seen.insert(s).second) sources.push_back(s);
    }

    // Symbolic preprocessing: one reducer per monomial divisible by an active leading term.
    ColumnMap cmap(num_vars_, deg);
    std::vector<BoolMonomial> todo;
    auto visit = [&](const RowSource& s) {
      for (const auto& m : s.p->terms()) {
        const auto [id, added] = cmap.add(m * s.t);
        if (added) todo.push_back(m * s.t);
      }
    };
    for (const auto& s : sources) visit(s);
    std::vector<std::size_t> active_ids;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (active_[i]) active_ids.push_back(i);
    std::vector<RowSource> reducers;
    std::vector<BoolMonomial> reducer_lead;
    while (!todo.empty()) {
      const BoolMonomial u = todo.back();
      todo.pop_back();
      std::size_t best = basis_.size();
      for (std::size_t i : active_ids)
        if (contains_mono(u, basis_[i].leading()) &&
            (best == basis_.size() || basis_[i].num_terms() < basis_[best].num_terms()))
          best = i;
      if (best == basis_.size()) continue;
      reducers.push_back({u / basis_[best].leading(), &basis_[best]});
      reducer_lead.push_back(u);
      visit(reducers.back());
    }

    // Column layout: reducer leading monomials first, then the rest, each in
    // descending grevlex order.
    const auto& monos = cmap.monos();
    const std::size_t ncols = monos.size();
    std::vector<char> is_lead(ncols, 0);
    for (const auto& u : reducer_lead) is_lead[cmap.at(u)] = 1;
    std::vector<std::uint32_t> order(ncols);
    for (std::uint32_t i = 0; i < ncols; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
      if (is_lead[a] != is_lead[b]) return is_lead[a] > is_lead[b];
      return grevlex_greater(monos[a], monos[b]);
    });
    std::vector<std::uint32_t> pos(ncols);
    for (std::uint32_t i = 0; i < ncols; ++i) pos[order[i]] = i;
    std::sort(reducers.begin(), reducers.end(), [&](const RowSource& a, const RowSource& b) {
      return pos[cmap.at(a.t * a.p->leading())] < pos[cmap.at(b.t * b.p->leading())];
    });

    const std::size_t nred = reducers.size();
    const std::size_t nrows = sources.size();
    step.rows = nred + nrows;
    step.cols = ncols;
    const std::size_t words = (ncols + 63) / 64;
    if ((nred + nrows) * words * 8 > budget_.max_matrix_bytes) {
      fail_reason_ = "matrix memory limit";
      return false;
    }

    auto fill = [&](std::uint64_t* row, const RowSource& s) {
      for (const auto& m : s.p->terms()) {
        const std::uint32_t c = pos[cmap.at(m * s.t)];
        row[c / 64] ^= std::uint64_t{1} << (c % 64);
      }
    };
    std::vector<std::uint64_t> red(nred * words, 0), rows(nrows * words, 0);
    for (std::size_t i = 0; i < nred; ++i) fill(red.data() + i * words, reducers[i]);
    for (std::size_t i = 0; i < nrows; ++i) fill(rows.data() + i * words, sources[i]);

    // Reducer i has its pivot at column i and only later bits among the first
    // nred columns. Clear those columns from every row, eight pivots at a time.
    constexpr unsigned kBlock = 8;
    std::vector<std::uint64_t> table((std::size_t{1} << kBlock) * words);
    for (std::size_t b = 0; b < nred; b += kBlock) {
      if (b % 1024 == 0 && out_of_time()) {
        fail_reason_ = "time limit";
        return false;
      }
      const unsigned kb = static_cast<unsigned>(std::min<std::size_t>(kBlock, nred - b));
      const std::size_t w0 = b / 64;
      for (unsigned i = kb; i-- > 0;)
        for (unsigned j = i + 1; j < kb; ++j) {
          std::uint64_t* ri = red.data() + (b + i) * words;
          const std::size_t c = b + j;
          if ((ri[c / 64] >> (c % 64)) & 1) xor_words(ri + w0, red.data() + (b + j) * words + w0, words - w0);
        }
      const std::size_t span = words - w0;
      std::fill(table.begin(), table.begin() + static_cast<std::ptrdiff_t>(span), 0);
      for (unsigned idx = 1; idx < (1u << kb); ++idx) {
        std::uint64_t* dst = table.data() + idx * span;
        const std::uint64_t* prev = table.data() + (idx & (idx - 1)) * span;
        const std::uint64_t* src = red.data() + (b + static_cast<unsigned>(std::countr_zero(idx))) * words + w0;
        for (std::size_t k = 0; k < span; ++k) dst[k] = prev[k] ^ src[k];
      }
      for (std::size_t r = 0; r < nrows; ++r) {
        std::uint64_t* row = rows.data() + r * words;
        const unsigned idx = extract_bits(row, b, kb);
        if (idx != 0) xor_words(row + w0, table.data() + idx * span, span);
      }
    }

    // Reduced echelon form of the remaining block; all pivots are new leading terms.
    std::size_t rank = 0;
    for (std::size_t c = nred; c < ncols && rank < nrows; ++c) {
      const std::size_t w = c / 64;
      const std::uint64_t bit = std::uint64_t{1} << (c % 64);
      std::size_t sel = rank;
      while (sel < nrows && !(rows[sel * words + w] & bit)) ++sel;
      if (sel == nrows) continue;
      if (rank % 256 == 0 && out_of_time()) {
        fail_reason_ = "time limit";
        return false;
      }
      if (sel != rank)
        std::swap_ranges(rows.begin() + static_cast<std::ptrdiff_t>(sel * words),
                         rows.begin() + static_cast<std::ptrdiff_t>((sel + 1) * words),
                         rows.begin() + static_cast<std::ptrdiff_t>(rank * words));
      const std::uint64_t* piv = rows.data() + rank * words;
      for (std::size_t r = sel + 1; r < nrows; ++r) {
        std::uint64_t* cur = rows.data() + r * words;
        if (cur[w] & bit) xor_words(cur + w, piv + w, words - w);
      }
      ++rank;
    }
    // Back substitution.
    for (std::size_t r = rank; r-- > 0;) {
      const std::uint64_t* piv = rows.data() + r * words;
      std::size_t c = 0;
      for (std::size_t w = 0; w < words; ++w)
        if (piv[w]) {
          c = w * 64 + static_cast<std::size_t>(std::countr_zero(piv[w]));
          break;
        }
      const std::size_t w = c / 64;
      const std::uint64_t bit = std::uint64_t{1} << (c % 64);
      for (std::size_t o = 0; o < r; ++o) {
        std::uint64_t* cur = rows.data() + o * words;
        if (cur[w] & bit) xor_words(cur + w, piv + w, words - w);
      }
    }
    for (std::size_t r = 0; r < rank; ++r) {
      std::vector<BoolMonomial> terms;
      const std::uint64_t* row = rows.data() + r * words;
      for (std::size_t w = 0; w < words; ++w)
        for (std::uint64_t bits = row[w]; bits; bits &= bits - 1)
          terms.push_back(monos[order[w * 64 + static_cast<std::size_t>(std::countr_zero(bits))]]);
      fresh.push_back(BoolPoly::from_sorted(std::move(terms)));
    }
    std::stable_sort(fresh.begin(), fresh.end(), [](const BoolPoly& x, const BoolPoly& y) {
      if (x.degree() != y.degree()) return x.degree() < y.degree();
      return grevlex_greater(y.leading(), x.leading());
    });
    return true;
  }

  // Gebauer-Moeller update for a new element h.
  void insert(BoolPoly h) {
    if (unit_) return;
    const BoolMonomial H = h.leading();
    const std::size_t hi = basis_.size();
    if (H.is_one()) unit_ = true;

    // Rows of one matrix can have leading terms divisible by each other. Such
    // an h only needs its pair with the divisor; chaining through that
    // divisor covers everything else.
    std::size_t divisor = basis_.size();
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (active_[i] && contains_mono(H, basis_[i].leading()) &&
          (divisor == basis_.size() || basis_[i].num_terms() < basis_[divisor].num_terms()))
        divisor = i;
    if (divisor != basis_.size()) {
      pairs_.push_back({H.degree(), divisor, hi, false, H});
      basis_.push_back(std::move(h));
      active_.push_back(false);
      return;
    }

    // Candidate pairs (g, h): drop g when another candidate has a strictly
    // smaller lcm, or the same lcm and a later index. Coprime ones never get
    // a pair but still eliminate others.
    std::vector<std::size_t> cand;
    std::vector<BoolMonomial> lcm;
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (active_[i]) {
        cand.push_back(i);
        lcm.push_back(H * basis_[i].leading());
      }
    std::vector<std::size_t> by_deg(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) by_deg[i] = i;
    std::stable_sort(by_deg.begin(), by_deg.end(),
                     [&](std::size_t a, std::size_t b) { return lcm[a].degree() < lcm[b].degree(); });
    std::vector<Pair> next;
    for (const auto& p : pairs_) {
      if (p.field) {
        // Field pair (g, y_v^2 + y_v) with lcm LM(g) * y_v: the chain criterion
        // through h, with lcm(h, y_v^2 + y_v) compared on the non-v part.
        const BoolMonomial v = BoolMonomial::variable(static_cast<unsigned>(p.b));
        if (contains_mono(p.lcm, H) && (H / v) != (p.lcm / v)) continue;
      } else if (contains_mono(p.lcm, H) && (H * basis_[p.a].leading()) != p.lcm &&
                 (H * basis_[p.b].leading()) != p.lcm) {
        continue;
      }
      next.push_back(p);
    }
    for (std::size_t i = 0; i < cand.size(); ++i) {
      const std::size_t g = cand[i];
      if (H.disjoint(basis_[g].leading())) continue;
      const unsigned dl = lcm[i].degree();
      bool keep = true;
      for (std::size_t o : by_deg) {
        const unsigned dot = lcm[o].degree();
        if (dot > dl) break;
        if (o == i || !contains_mono(lcm[i], lcm[o])) continue;
        if (dot < dl || o > i) {
          keep = false;
          break;
        }
      }
      if (keep) next.push_back({dl, g, hi, false, lcm[i]});
    }
    for (unsigned v : H.indices()) {
      // y_v h = h when v occurs in every term, so the pair is zero.
      const BoolMonomial yv = BoolMonomial::variable(v);
      if (std::all_of(h.terms().begin(), h.terms().end(), [&](BoolMonomial t) { return yv.divides(t); })) continue;
      next.push_back({H.degree() + 1, hi, v, true, H});
    }
    pairs_ = std::move(next);

    for (std::size_t i = 0; i < basis_.size(); ++i)
      if (active_[i] && contains_mono(basis_[i].leading(), H)) active_[i] = false;
    basis_.push_back(std::move(h));
    active_.push_back(true);
  }

  std::vector<BoolPoly> inputs_;
  unsigned num_vars_ = 0;
  GroebnerBudget budget_;
  std::chrono::steady_clock::time_point start_;
  std::deque<BoolPoly> basis_;  // stable addresses for row sources
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  bool unit_ = false;
  std::string fail_reason_;
};

}  // namespace

GBResult groebner_log(std::span<const BoolPoly> polys, const GroebnerBudget& budget) {
  return Engine(polys, budget).run();
}

GBResult groebner_log(const DescentSystem& system, const GroebnerBudget& budget) {
  return groebner_log(system.polys, budget);
}

BoolPoly normal_form(const BoolPoly& p, std::span<const BoolPoly> basis) {
  std::set<BoolMonomial, GrevlexGreater> work(p.terms().begin(), p.terms().end());
  std::vector<BoolMonomial> out;
  while (!work.empty()) {
    const BoolMonomial m = *work.begin();
    const BoolPoly* red = nullptr;
    for (const auto& g : basis)
      if (!g.is_zero() && g.leading().divides(m)) {
        red = &g;
        break;
      }
    if (red == nullptr) {
      work.erase(work.begin());
      out.push_back(m);
      continue;
    }
    const BoolPoly prod = red->mul_multilinear(m / red->leading());
    for (const auto& t : prod.terms()) {
      auto [it, inserted] = work.insert(t);
      if (!inserted) work.erase(it);
    }
  }
  return BoolPoly::from_sorted(std::move(out));
}

bool is_groebner(std::span<const BoolPoly> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero()) continue;
    for (unsigned v : basis[i].leading().indices())
      if (!normal_form(field_spoly(basis[i], v), basis).is_zero()) return false;
    for (std::size_t k = i + 1; k < basis.size(); ++k)
      if (!basis[k].is_zero() && !normal_form(regular_spoly(basis[i], basis[k]), basis).is_zero()) return false;
  }
  return true;
}

std::vector<BoolPoly> reduce_basis(std::vector<BoolPoly> basis) {
  basis.erase(std::remove_if(basis.begin(), basis.end(), [](const BoolPoly& p) { return p.is_zero(); }),
              basis.end());
  std::sort(basis.begin(), basis.end(),
            [](const BoolPoly& x, const BoolPoly& y) { return grevlex_greater(y.leading(), x.leading()); });
  std::vector<BoolPoly> minimal;
  for (const auto& g : basis) {
    bool redundant = false;
    for (const auto& o : minimal)
      if (o.leading().divides(g.leading())) redundant = true;
    if (!redundant) minimal.push_back(g);
  }
  std::vector<BoolPoly> out;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<BoolPoly> others;
    for (std::size_t k = 0; k < minimal.size(); ++k)
      if (k != i) others.push_back(minimal[k]);
    const BoolPoly lead = BoolPoly::from_sorted({minimal[i].leading()});
    const BoolPoly tail = minimal[i] + lead;
    out.push_back(lead + normal_form(tail, others));
  }
  return out;
}

}  // namespace sumfall
