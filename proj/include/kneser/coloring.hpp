// coloring.hpp - proper colorings, the two explicit upper-bound colorings,
// closed-form bounds, and an exact chromatic-number solver.
#pragma once

#include "kneser/core.hpp"

#include <chrono>
#include <optional>

namespace kneser {

// A total coloring of enumerate_vertices(spec), colors in [1..t].
// color[i] belongs to the i-th vertex in lexicographic order.
struct Coloring {
  int t = 0;
  std::vector<int> color;
};

inline void check_total(const HypergraphSpec& spec, const Coloring& c,
                        const std::vector<KSubset>& verts) {
  if (c.t < 1) throw input_error("coloring: t must be >= 1");
  if (c.color.size() != verts.size())
    throw input_error("coloring: not total on the vertex set");
  for (int v : c.color)
    if (v < 1 || v > c.t) throw input_error("coloring: color out of range");
  (void)spec;
}

namespace detail {

// Searches for an edge using only vertices from `pool` (indices into verts,
// ascending). If forced >= 0, that vertex must appear in the edge; for the
// partition variant it is excluded from further picks (members are distinct),
// for multiset variants it may repeat if S permits.
inline bool pool_contains_edge(const HypergraphSpec& spec,
                               const std::vector<KSubset>& verts,
                               const std::vector<int>& pool, int forced,
                               std::vector<KSubset>* witness) {
  const int r = spec.r();
  std::vector<int> picked;

  if (spec.multiset_edges()) {
    const SVector& s = spec.svec();
    std::vector<int> count(spec.n(), 0);
    auto fits = [&](const KSubset& a) {
      for (std::uint64_t m = a.mask(); m; m &= m - 1) {
        int i = std::countr_zero(m);
        if (count[i] + 1 > s.s[i]) return false;
      }
      return true;
    };
    auto add = [&](const KSubset& a, int d) {
      for (std::uint64_t m = a.mask(); m; m &= m - 1) count[std::countr_zero(m)] += d;
    };
    int need = r;
    if (forced >= 0) {
      if (!fits(verts[forced])) return false;
      add(verts[forced], +1);
      picked.push_back(forced);
      --need;
    }
    auto rec = [&](auto&& self, std::size_t from, int left) -> bool {
      if (left == 0) return true;
      for (std::size_t i = from; i < pool.size(); ++i) {
        const KSubset& a = verts[pool[i]];
        if (!fits(a)) continue;
        add(a, +1);
        picked.push_back(pool[i]);
        if (self(self, i, left - 1)) return true;  // same index again: multiset
        picked.pop_back();
        add(a, -1);
      }
      return false;
    };
    // S-disjointness is order-free, so multiplicities of the forced vertex
    // can be tried explicitly instead of merging it into the pool.
    if (forced >= 0) {
      int extra = 0;
      while (true) {
        if (rec(rec, 0, need - extra)) {
          if (witness) {
            witness->clear();
            for (int idx : picked) witness->push_back(verts[idx]);
          }
          return true;
        }
        if (extra == need || !fits(verts[forced])) break;
        add(verts[forced], +1);
        picked.push_back(forced);
        ++extra;
      }
      return false;
    }
    if (rec(rec, 0, need)) {
      if (witness) {
        witness->clear();
        for (int idx : picked) witness->push_back(verts[idx]);
      }
      return true;
    }
    return false;
  }

  // partition variant: pairwise disjoint, distinct members
  std::uint64_t used = 0;
  int need = r;
  if (forced >= 0) {
    used = verts[forced].mask();
    picked.push_back(forced);
    --need;
  }
  auto rec = [&](auto&& self, std::size_t from, int left, std::uint64_t u) -> bool {
    if (left == 0) return true;
    for (std::size_t i = from; i < pool.size(); ++i) {
      if (pool[i] == forced) continue;
      const KSubset& a = verts[pool[i]];
      if (u & a.mask()) continue;
      picked.push_back(pool[i]);
      if (self(self, i + 1, left - 1, u | a.mask())) return true;
      picked.pop_back();
    }
    return false;
  };
  if (rec(rec, 0, need, used)) {
    if (witness) {
      witness->clear();
      for (int idx : picked) witness->push_back(verts[idx]);
    }
    return true;
  }
  return false;
}

}  // namespace detail

// Returns a monochromatic edge if one exists, std::nullopt when proper.
inline std::optional<Edge> find_monochromatic_edge(const HypergraphSpec& spec,
                                                   const Coloring& c) {
  auto verts = enumerate_vertices(spec);
  check_total(spec, c, verts);
  std::vector<std::vector<int>> classes(c.t);
  for (std::size_t i = 0; i < verts.size(); ++i)
    classes[c.color[i] - 1].push_back(static_cast<int>(i));
  for (const auto& cls : classes) {
    std::vector<KSubset> witness;
    if (detail::pool_contains_edge(spec, verts, cls, -1, &witness))
      return Edge(std::move(witness));
  }
  return std::nullopt;
}

inline bool is_proper(const HypergraphSpec& spec, const Coloring& c) {
  return !find_monochromatic_edge(spec, c).has_value();
}

// ---------------------------------------------------------------------------
// Explicit colorings
// ---------------------------------------------------------------------------

// Greedy block sizes (t_1,...,t_l): the first block is the longest prefix with
// multiplicity sum < r*k, each later block the longest run with sum < r.
struct BlockSchedule {
  std::vector<int> t_blocks;
  int color_count() const { return static_cast<int>(t_blocks.size()); }
};

struct ErdosColoring {
  BlockSchedule schedule;
  Coloring coloring;           // on the caller's original labels
  std::vector<int> sorted_order;  // sorted_order[pos] = original element
};

// The block coloring for KG^r_S(n,k). Requires every s_i < r and nbar >= r*k.
// Internally sorts s ascending (the rule assumes it) and translates the
// resulting coloring back to the original labels.
inline ErdosColoring erdos_greedy_coloring(const SVector& s, int k) {
  const int n = s.n(), r = s.r;
  if (k < 1) throw input_error("erdos_greedy_coloring: k must be >= 1");
  for (int v : s.s)
    if (v >= r)
      throw input_error("erdos_greedy_coloring: unsupported, requires all s_i < r");
  if (s.nbar() < static_cast<long long>(r) * k)
    throw input_error("erdos_greedy_coloring: requires sum of s_i >= r*k");

  ErdosColoring out;
  out.sorted_order.resize(n);
  for (int i = 0; i < n; ++i) out.sorted_order[i] = i + 1;
  std::stable_sort(out.sorted_order.begin(), out.sorted_order.end(),
                   [&](int a, int b) { return s.at(a) < s.at(b); });
  std::vector<int> pos(n + 1);  // original element -> 1-based sorted position
  for (int i = 0; i < n; ++i) pos[out.sorted_order[i]] = i + 1;

  std::vector<int> ss(n);
  for (int i = 0; i < n; ++i) ss[i] = s.at(out.sorted_order[i]);

  long long limit = static_cast<long long>(r) * k;
  int at = 0;
  while (at < n) {
    long long sum = 0;
    int len = 0;
    while (at + len < n && sum + ss[at + len] < limit) sum += ss[at + len], ++len;
    if (len == 0)
      throw input_error("erdos_greedy_coloring: block rule stalled");  // unreachable: s_i < r
    out.schedule.t_blocks.push_back(len);
    at += len;
    limit = r;  // all blocks after the first use the < r rule
  }

  const int l = out.schedule.color_count();
  std::vector<int> block_start(l + 1, 0);  // 1-based sorted positions
  block_start[0] = 1;
  for (int b = 0; b < l; ++b) block_start[b + 1] = block_start[b] + out.schedule.t_blocks[b];

  auto spec = HypergraphSpec::general_s(n, k, s);
  auto verts = enumerate_vertices(spec);
  out.coloring.t = l;
  out.coloring.color.reserve(verts.size());
  for (const auto& v : verts) {
    int min_pos = n + 1, max_pos = 0;
    std::vector<int> positions;
    for (int e : v.elements()) {
      positions.push_back(pos[e]);
      min_pos = std::min(min_pos, pos[e]);
      max_pos = std::max(max_pos, pos[e]);
    }
    int color;
    if (max_pos < block_start[1]) {
      color = 1;  // contained in the first block
    } else {
      color = 0;
      for (int b = 1; b < l && !color; ++b)
        for (int p : positions)
          if (p >= block_start[b] && p < block_start[b + 1]) {
            color = b + 1;
            break;
          }
    }
    out.coloring.color.push_back(color);
  }
  return out;
}

// The standard interval coloring of a Kneser-type hypergraph with partition
// restrictions: t = ceil((n - r(k-1))/(r-1)), color(A) = min(ceil(min A/(r-1)), t).
inline Coloring standard_kneser_coloring(const HypergraphSpec& spec) {
  if (spec.variant() != Variant::partition)
    throw input_error("standard_kneser_coloring: partition variant required");
  const int n = spec.n(), k = spec.k(), r = spec.r();
  int t = static_cast<int>(ceil_div(n - static_cast<long long>(r) * (k - 1), r - 1));
  auto verts = enumerate_vertices(spec);
  Coloring c;
  c.t = t;
  c.color.reserve(verts.size());
  for (const auto& v : verts)
    c.color.push_back(static_cast<int>(
        std::min<long long>(ceil_div(v.min_element(), r - 1), t)));
  return c;
}

// Color count of the block coloring for constant S = (s,...,s), s < r:
// 1 + ceil((ns - rk + 1)/(P*s)) with P = floor((r-1)/s).
inline int ziegler_color_count(int n, int k, int r, int s) {
  if (s < 1 || s >= r) throw input_error("ziegler_color_count: requires 1 <= s < r");
  long long ns = static_cast<long long>(n) * s;
  if (ns < static_cast<long long>(r) * k)
    throw input_error("ziegler_color_count: requires n*s >= r*k");
  long long P = (r - 1) / s;
  return static_cast<int>(1 + ceil_div(ns - static_cast<long long>(r) * k + 1, P * s));
}

// ceil((n - r(k-1))/(r-1)) for partition instances with all blocks <= r,
// ceil((nbar - r(k-1))/(r-1)) for S-vector instances with nbar >= rk.
inline int formula_lower_bound(const HypergraphSpec& spec) {
  const int k = spec.k(), r = spec.r();
  if (spec.variant() == Variant::partition) {
    if (spec.blocks().max_block_size() > r)
      throw input_error("formula_lower_bound: requires all blocks of size <= r");
    return static_cast<int>(
        ceil_div(spec.n() - static_cast<long long>(r) * (k - 1), r - 1));
  }
  long long nbar = spec.svec().nbar();
  if (nbar < static_cast<long long>(r) * k)
    throw input_error("formula_lower_bound: requires nbar >= r*k");
  return static_cast<int>(ceil_div(nbar - static_cast<long long>(r) * (k - 1), r - 1));
}

// ---------------------------------------------------------------------------
// Exact solver
// ---------------------------------------------------------------------------

struct ChromaticValue {
  bool infinite = false;
  int value = 0;  // meaningful only when !infinite
  friend bool operator==(const ChromaticValue& a, const ChromaticValue& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
};

struct ExactResult {
  ChromaticValue chi;
  Coloring witness;  // an optimal proper coloring (empty when infinite)
};

namespace detail {

class ExactSolver {
 public:
  ExactSolver(const HypergraphSpec& spec, const std::vector<KSubset>& verts,
              const Budget& budget)
      : spec_(spec), verts_(verts), budget_(budget),
        start_(std::chrono::steady_clock::now()) {}

  // true iff a proper t-coloring exists; fills `out` with the first one found
  // in the deterministic search order.
  bool try_colors(int t, std::vector<int>& out) {
    t_ = t;
    color_.assign(verts_.size(), 0);
    classes_.assign(t, {});
    nodes_ = 0;
    if (dfs(0, 0)) {
      out = color_;
      return true;
    }
    return false;
  }

 private:
  bool dfs(std::size_t idx, int max_used) {
    if (idx == verts_.size()) return true;
    if ((++nodes_ & 0xFFF) == 0) check_time();
    int limit = std::min(t_, max_used + 1);
    for (int c = 1; c <= limit; ++c) {
      if (!creates_edge(static_cast<int>(idx), c)) {
        color_[idx] = c;
        classes_[c - 1].push_back(static_cast<int>(idx));
        if (dfs(idx + 1, std::max(max_used, c))) return true;
        classes_[c - 1].pop_back();
        color_[idx] = 0;
      }
    }
    return false;
  }

  // would assigning color c to vertex v complete a monochromatic edge?
  bool creates_edge(int v, int c) {
    return pool_contains_edge(spec_, verts_, classes_[c - 1], v, nullptr);
  }

  void check_time() const {
    double elapsed = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start_).count();
    if (elapsed > budget_.max_seconds)
      throw budget_error("chromatic_number_exact: time budget exceeded", t_, -1);
  }

  const HypergraphSpec& spec_;
  const std::vector<KSubset>& verts_;
  const Budget& budget_;
  std::chrono::steady_clock::time_point start_;
  int t_ = 0;
  std::vector<int> color_;
  std::vector<std::vector<int>> classes_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

// Least t admitting a proper t-coloring, by iterative deepening from the
// closed-form lower bound (when it applies). Instances with a loop edge have
// infinite chromatic number.
inline ExactResult chromatic_number_exact(const HypergraphSpec& spec,
                                          const Budget& budget = {}) {
  auto verts = enumerate_vertices(spec);
  if (verts.size() > budget.max_vertices)
    throw budget_error("chromatic_number_exact: vertex budget exceeded");
  if (spec.multiset_edges() && has_loop_edge(spec)) return {{true, 0}, {}};
  if (verts.empty()) return {{false, 0}, {}};

  int lower = 1;
  try {
    lower = std::max(1, formula_lower_bound(spec));
  } catch (const input_error&) {
    // bound not asserted for this instance shape; deepen from 1
  }

  // explicit proper coloring for the upper end of the search
  std::optional<Coloring> upper_coloring;
  if (spec.variant() == Variant::partition) {
    upper_coloring = standard_kneser_coloring(spec);
  } else {
    const SVector& s = spec.svec();
    bool all_below = true;
    for (int v : s.s) all_below = all_below && v < s.r;
    if (all_below && s.nbar() >= static_cast<long long>(s.r) * spec.k())
      upper_coloring = erdos_greedy_coloring(s, spec.k()).coloring;
  }
  int upper;
  if (upper_coloring && is_proper(spec, *upper_coloring)) {
    upper = upper_coloring->t;
  } else {
    upper = static_cast<int>(verts.size());  // all-distinct is proper: no loop edge
    upper_coloring.reset();
  }

  detail::ExactSolver solver(spec, verts, budget);
  std::vector<int> colors;
  for (int t = std::min(lower, upper); t <= upper; ++t) {
    if (solver.try_colors(t, colors)) {
      Coloring w{t, std::move(colors)};
      return {{false, t}, std::move(w)};
    }
  }
  // unreachable: the explicit coloring guarantees success at `upper`
  throw std::logic_error("chromatic_number_exact: search exhausted below upper bound");
}

}  // namespace kneser
