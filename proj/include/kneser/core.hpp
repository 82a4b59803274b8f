// core.hpp - ground-set combinatorics, hypergraph instance specs,
// vertex/edge predicates and enumeration.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kneser {

// Thrown on malformed inputs (precondition violations a caller can fix).
class input_error : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Thrown when an enumeration or search exceeds its resource caps.
// Carries whatever partial knowledge the operation had at that point.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what, long long lower = -1,
                        long long upper = -1)
      : std::runtime_error(what), lower_bound(lower), upper_bound(upper) {}
  long long lower_bound;  // best proven lower bound, -1 if none
  long long upper_bound;  // best known upper bound, -1 if none
};

// Resource caps shared by every potentially exponential operation.
struct Budget {
  std::size_t max_vertices = 20000;
  std::size_t max_faces = 2000000;
  double max_seconds = 600.0;
};

constexpr int kMaxGroundSet = 62;

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

// ceil(a/b) for b > 0
inline long long ceil_div(long long a, long long b) {
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

// ---------------------------------------------------------------------------
// KSubset: a subset of [1..n], stored as a bitmask (bit i-1 <-> element i).
// Vertices of every hypergraph here are k-element KSubsets.
// ---------------------------------------------------------------------------
class KSubset {
 public:
  KSubset() = default;
  KSubset(int n, std::uint64_t mask) : n_(n), mask_(mask) {
    if (n < 0 || n > kMaxGroundSet) throw input_error("KSubset: bad ground-set size");
    if (n < 64 && (mask >> n) != 0) throw input_error("KSubset: element out of range");
  }

  static KSubset from_elements(int n, const std::vector<int>& elems) {
    std::uint64_t m = 0;
    for (int e : elems) {
      if (e < 1 || e > n) throw input_error("KSubset: element out of range");
      std::uint64_t bit = std::uint64_t{1} << (e - 1);
      if (m & bit) throw input_error("KSubset: duplicate element");
      m |= bit;
    }
    return KSubset(n, m);
  }

  int n() const { return n_; }
  std::uint64_t mask() const { return mask_; }
  int size() const { return std::popcount(mask_); }
  bool contains(int e) const { return (mask_ >> (e - 1)) & 1; }
  bool disjoint(const KSubset& o) const { return (mask_ & o.mask_) == 0; }
  bool subset_of(const KSubset& o) const { return (mask_ & ~o.mask_) == 0; }
  int min_element() const { return std::countr_zero(mask_) + 1; }

  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint64_t m = mask_; m; m &= m - 1)
      out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  // Lexicographic order on the ascending element sequence:
  // A < B iff the smallest element where they differ belongs to A.
  friend bool operator<(const KSubset& a, const KSubset& b) {
    std::uint64_t d = a.mask_ ^ b.mask_;
    if (d == 0) return false;
    std::uint64_t low = d & -d;
    return (a.mask_ & low) != 0;
  }
  friend bool operator==(const KSubset& a, const KSubset& b) {
    return a.n_ == b.n_ && a.mask_ == b.mask_;
  }
  friend bool operator!=(const KSubset& a, const KSubset& b) { return !(a == b); }

  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (int e : elements()) {
      if (!first) s += ",";
      s += std::to_string(e);
      first = false;
    }
    return s + "}";
  }

 private:
  int n_ = 0;
  std::uint64_t mask_ = 0;
};

// ---------------------------------------------------------------------------
// SVector: per-element multiplicity bounds S = (s_1,...,s_n) with uniformity r.
// ---------------------------------------------------------------------------
struct SVector {
  std::vector<int> s;  // s[i-1] is the bound for element i
  int r = 0;

  SVector() = default;
  SVector(std::vector<int> values, int uniformity) : s(std::move(values)), r(uniformity) {
    validate();
  }

  void validate() const {
    if (r < 1) throw input_error("SVector: uniformity r must be >= 1");
    if (s.empty() || static_cast<int>(s.size()) > kMaxGroundSet)
      throw input_error("SVector: bad length");
    for (int v : s)
      if (v < 0 || v > r) throw input_error("SVector: entries must lie in [0, r]");
  }

  int n() const { return static_cast<int>(s.size()); }
  int at(int element) const { return s[element - 1]; }
  long long nbar() const { return std::accumulate(s.begin(), s.end(), 0LL); }

  // elements with full multiplicity s_i = r
  std::uint64_t full_multiplicity_mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < n(); ++i)
      if (s[i] == r) m |= std::uint64_t{1} << i;
    return m;
  }
  std::uint64_t support_mask() const {
    std::uint64_t m = 0;
    for (int i = 0; i < n(); ++i)
      if (s[i] > 0) m |= std::uint64_t{1} << i;
    return m;
  }
};

// ---------------------------------------------------------------------------
// Partition: disjoint nonempty blocks covering [1..n], canonically ordered
// by least element.
// ---------------------------------------------------------------------------
struct Partition {
  std::vector<std::vector<int>> blocks;
  int n = 0;

  Partition() = default;
  Partition(int ground_size, std::vector<std::vector<int>> bs)
      : blocks(std::move(bs)), n(ground_size) {
    for (auto& b : blocks) std::sort(b.begin(), b.end());
    std::sort(blocks.begin(), blocks.end());
    validate();
  }

  static Partition singletons(int ground_size) {
    std::vector<std::vector<int>> bs;
    for (int i = 1; i <= ground_size; ++i) bs.push_back({i});
    return Partition(ground_size, std::move(bs));
  }

  void validate() const {
    if (n < 1 || n > kMaxGroundSet) throw input_error("Partition: bad ground-set size");
    std::vector<int> seen(n + 1, 0);
    for (const auto& b : blocks) {
      if (b.empty()) throw input_error("Partition: empty block");
      for (int e : b) {
        if (e < 1 || e > n) throw input_error("Partition: element out of range");
        if (seen[e]++) throw input_error("Partition: blocks overlap");
      }
    }
    for (int e = 1; e <= n; ++e)
      if (!seen[e]) throw input_error("Partition: blocks do not cover ground set");
  }

  int block_count() const { return static_cast<int>(blocks.size()); }
  int max_block_size() const {
    std::size_t m = 0;
    for (const auto& b : blocks) m = std::max(m, b.size());
    return static_cast<int>(m);
  }
  // 0-based index of the block containing element e
  int block_of(int e) const {
    for (int j = 0; j < block_count(); ++j)
      for (int x : blocks[j])
        if (x == e) return j;
    throw input_error("Partition: element not covered");
  }
  std::uint64_t block_mask(int j) const {
    std::uint64_t m = 0;
    for (int x : blocks[j]) m |= std::uint64_t{1} << (x - 1);
    return m;
  }
};

// A subset is admissible w.r.t. a partition iff it meets each block at most once.
inline bool is_admissible(const KSubset& a, const Partition& p) {
  for (int j = 0; j < p.block_count(); ++j)
    if (std::popcount(a.mask() & p.block_mask(j)) > 1) return false;
  return true;
}

// ---------------------------------------------------------------------------
// HypergraphSpec: one of the three instance families.
//   uniform_s : edges are multisets with s-wise empty intersection
//               (encoded as the constant bound vector s-1)
//   general_s : edges are S-disjoint multisets
//   partition : vertices meet each block at most once; edges are r-subsets of
//               pairwise disjoint vertices
// ---------------------------------------------------------------------------
enum class Variant { uniform_s, general_s, partition };

class HypergraphSpec {
 public:
  static HypergraphSpec uniform_s(int n, int k, int r, int s) {
    if (s < 2 || s > r) throw input_error("uniform_s: requires 2 <= s <= r");
    SVector vec(std::vector<int>(n, s - 1), r);
    HypergraphSpec spec(Variant::uniform_s, n, k, r);
    spec.svec_ = std::move(vec);
    spec.swise_s_ = s;
    spec.check_common();
    return spec;
  }

  static HypergraphSpec general_s(int n, int k, SVector s) {
    if (s.n() != n) throw input_error("general_s: S length must equal n");
    HypergraphSpec spec(Variant::general_s, n, k, s.r);
    spec.svec_ = std::move(s);
    spec.check_common();
    return spec;
  }

  static HypergraphSpec partition(int n, int k, int r, Partition p) {
    if (p.n != n) throw input_error("partition: block ground set must equal n");
    HypergraphSpec spec(Variant::partition, n, k, r);
    spec.part_ = std::move(p);
    spec.check_common();
    return spec;
  }

  Variant variant() const { return variant_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int r() const { return r_; }
  bool multiset_edges() const { return variant_ != Variant::partition; }

  const SVector& svec() const {
    if (variant_ == Variant::partition) throw input_error("spec has no S vector");
    return svec_;
  }
  const Partition& blocks() const {
    if (variant_ != Variant::partition) throw input_error("spec has no partition");
    return part_;
  }
  // the s of s-wise empty intersection (the bound vector is constant s-1)
  int swise_s() const {
    if (variant_ != Variant::uniform_s) throw input_error("not a uniform_s spec");
    return swise_s_;
  }

  std::string str() const {
    std::string out;
    switch (variant_) {
      case Variant::uniform_s:
        out = "uniform_s(n=" + std::to_string(n_) + ",k=" + std::to_string(k_) +
              ",r=" + std::to_string(r_) + ",s=" + std::to_string(swise_s_) + ")";
        break;
      case Variant::general_s: {
        out = "general_s(n=" + std::to_string(n_) + ",k=" + std::to_string(k_) +
              ",r=" + std::to_string(r_) + ",S=";
        for (int i = 0; i < svec_.n(); ++i)
          out += (i ? "." : "") + std::to_string(svec_.s[i]);
        out += ")";
        break;
      }
      case Variant::partition: {
        out = "partition(n=" + std::to_string(n_) + ",k=" + std::to_string(k_) +
              ",r=" + std::to_string(r_) + ",blocks=";
        for (std::size_t j = 0; j < part_.blocks.size(); ++j)
          out += (j ? "|" : "") + std::to_string(part_.blocks[j].size());
        out += ")";
        break;
      }
    }
    return out;
  }

 private:
  HypergraphSpec(Variant v, int n, int k, int r) : variant_(v), n_(n), k_(k), r_(r) {}

  void check_common() const {
    if (n_ < 1 || n_ > kMaxGroundSet) throw input_error("spec: bad n");
    if (k_ < 1 || k_ > n_) throw input_error("spec: bad k");
    if (r_ < 2) throw input_error("spec: uniformity r must be >= 2");
    // general_s instances live on multiplicities: only nbar-based claims need
    // a size floor, and those operations check it themselves
    if (variant_ != Variant::general_s && n_ < static_cast<long long>(r_) * k_)
      throw input_error("spec: requires n >= r*k");
    if (variant_ != Variant::partition && svec_.r != r_)
      throw input_error("spec: S uniformity mismatch");
  }

  Variant variant_;
  int n_, k_, r_;
  SVector svec_;
  Partition part_;
  int swise_s_ = 0;
};

// ---------------------------------------------------------------------------
// Edge: a size-r multiset of vertices in canonical (sorted) order.
// ---------------------------------------------------------------------------
struct Edge {
  std::vector<KSubset> members;

  Edge() = default;
  explicit Edge(std::vector<KSubset> ms) : members(std::move(ms)) {
    std::sort(members.begin(), members.end());
  }

  friend bool operator==(const Edge& a, const Edge& b) { return a.members == b.members; }

  std::string str() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members.size(); ++i)
      s += (i ? "," : "") + members[i].str();
    return s + "}";
  }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// All admissible k-subsets of [n], in lexicographic order.
inline std::vector<KSubset> enumerate_vertices(const HypergraphSpec& spec) {
  const int n = spec.n(), k = spec.k();
  std::vector<KSubset> out;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i + 1;
  while (true) {
    KSubset v = KSubset::from_elements(n, comb);
    if (spec.variant() != Variant::partition || is_admissible(v, spec.blocks()))
      out.push_back(v);
    // next k-combination in lexicographic order
    int i = k - 1;
    while (i >= 0 && comb[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

// True iff no element appears in more members than its bound allows.
inline bool is_s_disjoint(const std::vector<KSubset>& tuple, const SVector& s) {
  std::vector<int> count(s.n(), 0);
  for (const auto& a : tuple) {
    if (a.n() != s.n()) throw input_error("is_s_disjoint: mismatched ground sets");
    for (std::uint64_t m = a.mask(); m; m &= m - 1) {
      int i = std::countr_zero(m);
      if (++count[i] > s.s[i]) return false;
    }
  }
  return true;
}

inline bool is_edge(const HypergraphSpec& spec, const std::vector<KSubset>& members) {
  if (static_cast<int>(members.size()) != spec.r())
    throw input_error("is_edge: member count must equal r");
  for (const auto& a : members) {
    if (a.n() != spec.n()) throw input_error("is_edge: mismatched ground sets");
    if (a.size() != spec.k()) return false;  // not a vertex
  }
  if (spec.multiset_edges()) return is_s_disjoint(members, spec.svec());
  // partition variant: pairwise distinct, pairwise disjoint, all admissible
  const Partition& p = spec.blocks();
  std::uint64_t used = 0;
  for (const auto& a : members) {
    if (!is_admissible(a, p)) return false;
    if (used & a.mask()) return false;  // repeats or intersections
    used |= a.mask();
  }
  return true;
}

// A loop edge {A,...,A} exists iff at least k elements have s_i = r.
inline bool has_loop_edge(const HypergraphSpec& spec) {
  if (!spec.multiset_edges())
    throw input_error("has_loop_edge: defined for uniform_s/general_s only");
  return std::popcount(spec.svec().full_multiplicity_mask()) >= spec.k();
}

// The S-vector-to-partition reduction: ground set [nbar], block i holding the
// i-th run of s_i fresh elements, and the element map f collapsing each run.
struct ExpandedPartition {
  int nbar = 0;
  Partition blocks;           // partition of [nbar]; zero-length runs omitted
  std::vector<int> f;         // f[j-1] in [1..n] is the image of j in [nbar]
};

inline ExpandedPartition expand_s_to_partition(const SVector& s) {
  long long nbar = s.nbar();
  if (nbar < 1) throw input_error("expand_s_to_partition: all multiplicities zero");
  if (nbar > kMaxGroundSet) throw input_error("expand_s_to_partition: nbar too large");
  ExpandedPartition out;
  out.nbar = static_cast<int>(nbar);
  std::vector<std::vector<int>> bs;
  int next = 1;
  for (int i = 1; i <= s.n(); ++i) {
    if (s.at(i) == 0) continue;
    std::vector<int> block;
    for (int c = 0; c < s.at(i); ++c) {
      block.push_back(next++);
      out.f.push_back(i);
    }
    bs.push_back(std::move(block));
  }
  out.blocks = Partition(out.nbar, std::move(bs));
  return out;
}

// Image of a vertex of the expanded instance: a multiset of original elements,
// reported as (element, multiplicity) counts. The image of an edge member is a
// k-subset exactly when all multiplicities are 1.
inline std::optional<KSubset> map_vertex_through(const ExpandedPartition& ep,
                                                 const KSubset& v, int n_orig) {
  std::vector<int> count(n_orig + 1, 0);
  for (int e : v.elements()) count[ep.f[e - 1]]++;
  std::uint64_t m = 0;
  for (int i = 1; i <= n_orig; ++i) {
    if (count[i] > 1) return std::nullopt;  // collapsed: not a k-subset
    if (count[i] == 1) m |= std::uint64_t{1} << (i - 1);
  }
  return KSubset(n_orig, m);
}

// All edges of the instance in canonical order. Aborts with budget_error once
// more than `cap` edges have been produced; edge counts explode combinatorially.
inline std::vector<Edge> enumerate_edges(const HypergraphSpec& spec, std::size_t cap) {
  std::vector<KSubset> verts = enumerate_vertices(spec);
  std::vector<Edge> out;
  const int r = spec.r();
  std::vector<KSubset> cur;

  if (spec.multiset_edges()) {
    const SVector& s = spec.svec();
    std::vector<int> count(spec.n(), 0);
    auto fits = [&](const KSubset& a) {
      for (std::uint64_t m = a.mask(); m; m &= m - 1)
        if (count[std::countr_zero(m)] + 1 > s.s[std::countr_zero(m)]) return false;
      return true;
    };
    auto add = [&](const KSubset& a, int delta) {
      for (std::uint64_t m = a.mask(); m; m &= m - 1) count[std::countr_zero(m)] += delta;
    };
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (static_cast<int>(cur.size()) == r) {
        if (out.size() >= cap)
          throw budget_error("enumerate_edges: edge cap exceeded",
                             static_cast<long long>(cap));
        out.emplace_back(cur);
        return;
      }
      for (std::size_t i = from; i < verts.size(); ++i) {
        if (!fits(verts[i])) continue;
        add(verts[i], +1);
        cur.push_back(verts[i]);
        self(self, i);  // repetition allowed: multiset
        cur.pop_back();
        add(verts[i], -1);
      }
    };
    rec(rec, 0);
  } else {
    auto rec = [&](auto&& self, std::size_t from, std::uint64_t used) -> void {
      if (static_cast<int>(cur.size()) == r) {
        if (out.size() >= cap)
          throw budget_error("enumerate_edges: edge cap exceeded",
                             static_cast<long long>(cap));
        out.emplace_back(cur);
        return;
      }
      for (std::size_t i = from; i < verts.size(); ++i) {
        if (used & verts[i].mask()) continue;
        cur.push_back(verts[i]);
        self(self, i + 1, used | verts[i].mask());  // distinct members
        cur.pop_back();
      }
    };
    rec(rec, 0, 0);
  }
  return out;
}

}  // namespace kneser
