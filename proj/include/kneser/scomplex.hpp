// scomplex.hpp - the simplicial complexes: joins E_{n-1}(Zp) with their free
// Zp action, box complexes of hypergraphs, the tuple complexes K_s and C_s,
// maximal nerves, and the A_1-restriction subcomplexes with their retraction.
#pragma once

#include "kneser/core.hpp"

#include <map>
#include <set>
#include <unordered_set>

namespace kneser {

// ---------------------------------------------------------------------------
// SimplicialComplex: finite abstract complex stored by its maximal faces.
// ---------------------------------------------------------------------------
struct SimplicialComplex {
  int n_vertices = 0;
  std::vector<std::string> labels;        // optional; size n_vertices when set
  std::vector<std::vector<int>> facets;   // each sorted ascending; list sorted; maximal

  bool empty() const { return facets.empty(); }
  int dim() const {
    std::size_t m = 0;
    for (const auto& f : facets) m = std::max(m, f.size());
    return static_cast<int>(m) - 1;
  }
  // face must be sorted ascending
  bool is_face(const std::vector<int>& face) const {
    for (const auto& f : facets)
      if (std::includes(f.begin(), f.end(), face.begin(), face.end())) return true;
    return false;
  }
};

// Sorts, deduplicates and drops faces contained in another: the canonical
// facet list of the complex generated by `faces`.
inline std::vector<std::vector<int>> canonicalize_facets(
    std::vector<std::vector<int>> faces) {
  for (auto& f : faces) std::sort(f.begin(), f.end());
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < faces.size() && maximal; ++j)
      if (faces[i].size() < faces[j].size() &&
          std::includes(faces[j].begin(), faces[j].end(), faces[i].begin(),
                        faces[i].end()))
        maximal = false;
    if (maximal) out.push_back(faces[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline SimplicialComplex complex_from_faces(int n_vertices,
                                            std::vector<std::vector<int>> faces) {
  SimplicialComplex sc;
  sc.n_vertices = n_vertices;
  sc.facets = canonicalize_facets(std::move(faces));
  return sc;
}

// The inclusion-maximal faces, canonically sorted.
inline std::vector<std::vector<int>> maximal_facets(const SimplicialComplex& sc) {
  return sc.facets;
}

// ---------------------------------------------------------------------------
// E_{n-1}(Zp): the n-fold join of the p-point discrete space. Faces are sets
// of (sign, position) pairs with pairwise distinct positions; Zp shifts signs.
// ---------------------------------------------------------------------------
struct ZpFace {
  int p = 0;
  std::vector<std::int8_t> sign;  // sign[j-1] in {-1 (absent), 0..p-1}

  ZpFace() = default;
  ZpFace(int prime, int n) : p(prime), sign(n, -1) {}

  int n() const { return static_cast<int>(sign.size()); }
  int size() const {
    int c = 0;
    for (auto v : sign) c += v >= 0;
    return c;
  }
  bool empty() const { return size() == 0; }
  bool subset_of(const ZpFace& o) const {
    for (int j = 0; j < n(); ++j)
      if (sign[j] >= 0 && sign[j] != o.sign[j]) return false;
    return true;
  }
  // pairs (i, j), i = sign, j = 1-based position, ordered by position
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < n(); ++j)
      if (sign[j] >= 0) out.emplace_back(sign[j], j + 1);
    return out;
  }
  std::uint64_t position_mask() const {
    std::uint64_t m = 0;
    for (int j = 0; j < n(); ++j)
      if (sign[j] >= 0) m |= std::uint64_t{1} << j;
    return m;
  }
  friend bool operator==(const ZpFace& a, const ZpFace& b) {
    return a.p == b.p && a.sign == b.sign;
  }
  std::string str() const {
    std::string s = "{";
    bool first = true;
    for (auto [i, j] : pairs()) {
      if (!first) s += ",";
      s += "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      first = false;
    }
    return s + "}";
  }
};

// The group action: add omega to every sign, mod p. Free on nonempty faces.
inline ZpFace zp_act(int omega, const ZpFace& a) {
  ZpFace out = a;
  for (auto& v : out.sign)
    if (v >= 0) v = static_cast<std::int8_t>((v + omega) % a.p);
  return out;
}

// Mixed-radix face ids: digit (sign+1) in base p+1 per position. Id 0 is the
// empty face; ids run over [0, (p+1)^n).
inline std::uint64_t zp_face_id(const ZpFace& a) {
  std::uint64_t id = 0;
  for (int j = a.n() - 1; j >= 0; --j) id = id * (a.p + 1) + (a.sign[j] + 1);
  return id;
}
inline ZpFace zp_face_from_id(std::uint64_t id, int n, int p) {
  ZpFace out(p, n);
  for (int j = 0; j < n; ++j) {
    out.sign[j] = static_cast<std::int8_t>(static_cast<int>(id % (p + 1)) - 1);
    id /= (p + 1);
  }
  return out;
}

// All (p+1)^n - 1 nonempty faces, in face-id order.
inline std::vector<ZpFace> enumerate_E_faces(int n, int p, const Budget& budget = {}) {
  if (!is_prime(p)) throw input_error("E_n(Zp): p must be prime");
  if (n < 1) throw input_error("E_n(Zp): n must be >= 1");
  double total = 1;
  for (int j = 0; j < n; ++j) total *= p + 1;
  if (total > static_cast<double>(budget.max_faces))
    throw budget_error("enumerate_E_faces: face budget exceeded");
  std::vector<ZpFace> out;
  out.reserve(static_cast<std::size_t>(total) - 1);
  std::uint64_t count = 1;
  for (int j = 0; j < n; ++j) count *= p + 1;
  for (std::uint64_t id = 1; id < count; ++id) out.push_back(zp_face_from_id(id, n, p));
  return out;
}

struct EComplex {
  SimplicialComplex sc;
  int n = 0, p = 0;
  // vertex id of the pair (i, j), j 1-based
  int vertex_id(int i, int j) const { return (j - 1) * p + i; }
};

// E_{n-1}(Zp) as an explicit complex: p*n vertices, p^n top faces.
inline EComplex build_E(int n, int p, const Budget& budget = {}) {
  if (!is_prime(p)) throw input_error("build_E: p must be prime");
  if (n < 1) throw input_error("build_E: n must be >= 1");
  double top = 1;
  for (int j = 0; j < n; ++j) top *= p;
  if (top > static_cast<double>(budget.max_faces))
    throw budget_error("build_E: face budget exceeded");
  EComplex out;
  out.n = n;
  out.p = p;
  out.sc.n_vertices = n * p;
  for (int j = 1; j <= n; ++j)
    for (int i = 0; i < p; ++i)
      out.sc.labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");
  std::vector<int> digits(n, 0);
  while (true) {
    std::vector<int> facet;
    for (int j = 1; j <= n; ++j) facet.push_back(out.vertex_id(digits[j - 1], j));
    std::sort(facet.begin(), facet.end());
    out.sc.facets.push_back(std::move(facet));
    int j = 0;
    while (j < n && digits[j] == p - 1) digits[j++] = 0;
    if (j == n) break;
    ++digits[j];
  }
  std::sort(out.sc.facets.begin(), out.sc.facets.end());
  return out;
}

// ---------------------------------------------------------------------------
// TupleVertex: an ordered r-tuple of subsets of [1..n], the vertices of box
// complexes and of K_s / C_s.
// ---------------------------------------------------------------------------
struct TupleVertex {
  int n = 0;
  std::vector<std::uint64_t> parts;  // bitmasks over [1..n]

  int r() const { return static_cast<int>(parts.size()); }
  std::string str() const {
    std::string s = "(";
    for (std::size_t j = 0; j < parts.size(); ++j)
      s += (j ? "," : "") + KSubset(n, parts[j]).str();
    return s + ")";
  }
  friend bool operator==(const TupleVertex& a, const TupleVertex& b) {
    return a.n == b.n && a.parts == b.parts;
  }
  friend bool operator<(const TupleVertex& a, const TupleVertex& b) {
    for (std::size_t j = 0; j < a.parts.size() && j < b.parts.size(); ++j) {
      if (a.parts[j] != b.parts[j])
        return KSubset(a.n, a.parts[j]) < KSubset(b.n, b.parts[j]);
    }
    return a.parts.size() < b.parts.size();
  }
};

// coordinate shift generating the cyclic action on tuple complexes
inline TupleVertex zr_shift(const TupleVertex& v) {
  TupleVertex out = v;
  if (!out.parts.empty()) {
    std::rotate(out.parts.begin(), out.parts.begin() + 1, out.parts.end());
  }
  return out;
}

namespace detail {

inline bool tuple_s_disjoint(const std::vector<std::uint64_t>& parts, const SVector& s) {
  for (int x = 0; x < s.n(); ++x) {
    int count = 0;
    for (auto m : parts) count += (m >> x) & 1;
    if (count > s.s[x]) return false;
  }
  return true;
}

// all k-subsets of [1..n] as masks, lexicographic on element lists
inline std::vector<std::uint64_t> k_subset_masks(int n, int k) {
  std::vector<std::uint64_t> out;
  if (k > n || k < 0) return out;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i + 1;
  while (true) {
    std::uint64_t m = 0;
    for (int e : comb) m |= std::uint64_t{1} << (e - 1);
    out.push_back(m);
    int i = k - 1;
    while (i >= 0 && comb[i] == n - (k - 1 - i)) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return out;
}

// Enumerates all inclusion-maximal systems (U_1,...,U_r), U_j a nonempty
// subset of sides[j], such that every selection (u_1,...,u_r) satisfies pred.
// Maximal faces of the mixed-selection complexes are exactly the full
// products of such systems.
template <typename Pred>
std::vector<std::vector<std::vector<std::uint64_t>>> maximal_systems(
    const std::vector<std::vector<std::uint64_t>>& sides, Pred pred,
    const Budget& budget) {
  const int r = static_cast<int>(sides.size());
  std::vector<std::vector<std::vector<std::uint64_t>>> candidates;
  std::vector<std::vector<std::uint64_t>> chosen(r);
  std::size_t nodes = 0;

  std::vector<std::uint64_t> sel(r);
  // all selections drawn from the chosen prefix [0, upto] satisfy pred,
  // with sel[upto+1..r-1] pinned by the caller
  auto prefix_ok = [&](int upto) {
    auto walk = [&](auto&& self, int j) -> bool {
      if (j > upto) return pred(sel);
      for (auto u : chosen[j]) {
        sel[j] = u;
        if (!self(self, j + 1)) return false;
      }
      return true;
    };
    return walk(walk, 0);
  };

  // some single-element completion of the later coordinates exists; growing a
  // system never revives a branch once this fails
  auto completable = [&](int j) {
    auto pick = [&](auto&& self, int t) -> bool {
      if (t == r) return prefix_ok(j);
      for (auto w : sides[t]) {
        sel[t] = w;
        if (self(self, t + 1)) return true;
      }
      return false;
    };
    return pick(pick, j + 1);
  };

  // last coordinate is forced to the closure of the earlier choices
  auto closure = [&]() {
    std::vector<std::uint64_t> last;
    for (auto v : sides[r - 1]) {
      sel[r - 1] = v;
      if (prefix_ok(r - 2)) last.push_back(v);
    }
    return last;
  };

  auto choose_coord = [&](auto&& self, int j) -> void {
    if (++nodes > budget.max_faces)
      throw budget_error("maximal_systems: search budget exceeded");
    if (j == r - 1) {
      auto last = closure();
      if (!last.empty()) {
        chosen[r - 1] = std::move(last);
        candidates.push_back(chosen);
        chosen[r - 1].clear();
      }
      return;
    }
    // subset DFS over sides[j], pruned on completion existence
    auto subsets = [&](auto&& inner, std::size_t idx) -> void {
      if (idx == sides[j].size()) {
        if (!chosen[j].empty()) self(self, j + 1);
        return;
      }
      if (++nodes > budget.max_faces)
        throw budget_error("maximal_systems: search budget exceeded");
      chosen[j].push_back(sides[j][idx]);
      if (completable(j)) inner(inner, idx + 1);
      chosen[j].pop_back();
      inner(inner, idx + 1);
    };
    subsets(subsets, 0);
  };
  choose_coord(choose_coord, 0);

  // keep the componentwise-maximal systems only
  auto dominated = [](const std::vector<std::vector<std::uint64_t>>& a,
                      const std::vector<std::vector<std::uint64_t>>& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
      for (auto v : a[j])
        if (std::find(b[j].begin(), b[j].end(), v) == b[j].end()) return false;
    return true;
  };
  std::vector<std::vector<std::vector<std::uint64_t>>> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < candidates.size() && keep; ++j) {
      if (i == j) continue;
      if (dominated(candidates[i], candidates[j])) {
        bool equal = dominated(candidates[j], candidates[i]);
        keep = equal ? i < j : false;
      }
    }
    if (keep) out.push_back(candidates[i]);
  }
  return out;
}

// expand maximal systems into facets (vertex-id sets) of the tuple complex
inline std::vector<std::vector<int>> systems_to_facets(
    const std::vector<std::vector<std::vector<std::uint64_t>>>& systems,
    const std::map<std::vector<std::uint64_t>, int>& vertex_id) {
  std::vector<std::vector<int>> facets;
  for (const auto& sys : systems) {
    std::vector<int> facet;
    std::vector<std::uint64_t> sel(sys.size());
    auto walk = [&](auto&& self, std::size_t j) -> void {
      if (j == sys.size()) {
        auto it = vertex_id.find(sel);
        if (it == vertex_id.end())
          throw std::logic_error("systems_to_facets: selection is not a vertex");
        facet.push_back(it->second);
        return;
      }
      for (auto u : sys[j]) {
        sel[j] = u;
        self(self, j + 1);
      }
    };
    walk(walk, 0);
    facets.push_back(std::move(facet));
  }
  return canonicalize_facets(std::move(facets));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tuple complexes
// ---------------------------------------------------------------------------
struct KsComplex {
  SimplicialComplex sc;
  std::vector<TupleVertex> verts;  // verts[id]
  std::vector<int> kvec;
  SVector s;
};

struct CsComplex {
  SimplicialComplex sc;
  std::vector<TupleVertex> verts;
  std::vector<int> kvec;
  SVector s;
};

struct BoxComplex {
  SimplicialComplex sc;
  std::vector<TupleVertex> verts;
};

// K_s(n, k): vertices are s-disjoint r-tuples (X_1,...,X_r) with |X_j| = k_j;
// a set of tuples is a face iff every mixed selection is s-disjoint.
inline KsComplex build_Ks(int n, const std::vector<int>& kvec, const SVector& s,
                          const Budget& budget = {}) {
  if (s.n() != n) throw input_error("build_Ks: S length must equal n");
  if (static_cast<int>(kvec.size()) != s.r)
    throw input_error("build_Ks: k-vector length must equal r");
  for (int k : kvec)
    if (k < 0 || k > n) throw input_error("build_Ks: bad k-vector entry");
  const int r = s.r;

  KsComplex out;
  out.kvec = kvec;
  out.s = s;

  std::vector<std::vector<std::uint64_t>> sides(r);
  std::uint64_t supp = s.support_mask();
  for (int j = 0; j < r; ++j)
    for (auto m : detail::k_subset_masks(n, kvec[j]))
      if ((m & ~supp) == 0) sides[j].push_back(m);

  // vertices: product of the sides, filtered by s-disjointness
  std::map<std::vector<std::uint64_t>, int> vertex_id;
  std::vector<std::uint64_t> cur(r);
  std::size_t explored = 0;
  auto gen = [&](auto&& self, int j) -> void {
    if (j == r) {
      if (++explored > budget.max_faces)
        throw budget_error("build_Ks: enumeration budget exceeded");
      if (detail::tuple_s_disjoint(cur, s)) {
        if (vertex_id.size() >= budget.max_vertices)
          throw budget_error("build_Ks: vertex budget exceeded");
        int id = static_cast<int>(vertex_id.size());
        vertex_id.emplace(cur, id);
        out.verts.push_back(TupleVertex{n, cur});
      }
      return;
    }
    for (auto m : sides[j]) {
      cur[j] = m;
      self(self, j + 1);
    }
  };
  gen(gen, 0);

  out.sc.n_vertices = static_cast<int>(out.verts.size());
  for (const auto& v : out.verts) out.sc.labels.push_back(v.str());
  if (out.verts.empty()) return out;

  auto pred = [&](const std::vector<std::uint64_t>& sel) {
    return detail::tuple_s_disjoint(sel, s);
  };
  auto systems = detail::maximal_systems(sides, pred, budget);
  out.sc.facets = detail::systems_to_facets(systems, vertex_id);
  return out;
}

// C_s(n, k): vertices are r-tuples (A_1,...,A_r), |A_j| >= k_j, with every
// ground element in exactly s(x) parts; a set of tuples is a face iff each
// coordinate has a common subset of size k_j.
inline CsComplex build_Cs(int n, const std::vector<int>& kvec, const SVector& s,
                          const Budget& budget = {}) {
  if (s.n() != n) throw input_error("build_Cs: S length must equal n");
  if (static_cast<int>(kvec.size()) != s.r)
    throw input_error("build_Cs: k-vector length must equal r");
  for (int k : kvec)
    if (k < 0 || k > n) throw input_error("build_Cs: bad k-vector entry");
  const int r = s.r;

  CsComplex out;
  out.kvec = kvec;
  out.s = s;

  // choose, per element, the set of parts it occupies (size exactly s(x))
  std::vector<std::vector<std::uint64_t>> options(n);  // masks over parts
  for (int x = 0; x < n; ++x) {
    for (std::uint64_t pm = 0; pm < (std::uint64_t{1} << r); ++pm)
      if (std::popcount(pm) == s.s[x]) options[x].push_back(pm);
  }
  std::vector<std::uint64_t> parts(r, 0);
  std::size_t explored = 0;
  auto gen = [&](auto&& self, int x) -> void {
    if (x == n) {
      if (++explored > budget.max_faces)
        throw budget_error("build_Cs: enumeration budget exceeded");
      for (int j = 0; j < r; ++j)
        if (std::popcount(parts[j]) < kvec[j]) return;
      if (out.verts.size() >= budget.max_vertices)
        throw budget_error("build_Cs: vertex budget exceeded");
      out.verts.push_back(TupleVertex{n, parts});
      return;
    }
    for (auto pm : options[x]) {
      for (int j = 0; j < r; ++j)
        if ((pm >> j) & 1) parts[j] |= std::uint64_t{1} << x;
      self(self, x + 1);
      for (int j = 0; j < r; ++j)
        if ((pm >> j) & 1) parts[j] &= ~(std::uint64_t{1} << x);
    }
  };
  gen(gen, 0);
  std::sort(out.verts.begin(), out.verts.end());

  out.sc.n_vertices = static_cast<int>(out.verts.size());
  for (const auto& v : out.verts) out.sc.labels.push_back(v.str());
  if (out.verts.empty()) return out;

  // facets: for each witness system (W_1,...,W_r) of k_j-subsets, the set of
  // vertices with W_j inside A_j; every face extends to one of these
  std::vector<std::vector<int>> candidates;
  std::vector<std::vector<std::uint64_t>> wsides(r);
  for (int j = 0; j < r; ++j) wsides[j] = detail::k_subset_masks(n, kvec[j]);
  std::vector<std::uint64_t> w(r);
  std::size_t count = 0;
  auto walk = [&](auto&& self, int j) -> void {
    if (j == r) {
      if (++count > budget.max_faces)
        throw budget_error("build_Cs: witness budget exceeded");
      std::vector<int> face;
      for (int id = 0; id < out.sc.n_vertices; ++id) {
        bool ok = true;
        for (int t = 0; t < r && ok; ++t)
          ok = (w[t] & ~out.verts[id].parts[t]) == 0;
        if (ok) face.push_back(id);
      }
      if (!face.empty()) candidates.push_back(std::move(face));
      return;
    }
    for (auto m : wsides[j]) {
      w[j] = m;
      self(self, j + 1);
    }
  };
  walk(walk, 0);
  out.sc.facets = canonicalize_facets(std::move(candidates));
  return out;
}

// The box complex: vertices are ordered r-tuples whose member multiset is an
// edge; faces by the mixed-selection rule; Zr acts by coordinate shift.
inline BoxComplex build_box_complex(const HypergraphSpec& spec,
                                    const Budget& budget = {}) {
  const int r = spec.r();
  auto hverts = enumerate_vertices(spec);
  if (hverts.size() > budget.max_vertices)
    throw budget_error("build_box_complex: vertex budget exceeded");

  std::vector<std::vector<std::uint64_t>> sides(
      r, std::vector<std::uint64_t>());
  for (int j = 0; j < r; ++j)
    for (const auto& v : hverts) sides[j].push_back(v.mask());

  auto pred = [&](const std::vector<std::uint64_t>& sel) {
    std::vector<KSubset> members;
    members.reserve(sel.size());
    for (auto m : sel) members.emplace_back(spec.n(), m);
    return is_edge(spec, members);
  };

  BoxComplex out;
  std::map<std::vector<std::uint64_t>, int> vertex_id;
  std::vector<std::uint64_t> cur(r);
  std::size_t explored = 0;
  auto gen = [&](auto&& self, int j) -> void {
    if (j == r) {
      if (++explored > budget.max_faces)
        throw budget_error("build_box_complex: enumeration budget exceeded");
      if (pred(cur)) {
        if (out.verts.size() >= budget.max_vertices)
          throw budget_error("build_box_complex: vertex budget exceeded");
        int id = static_cast<int>(vertex_id.size());
        vertex_id.emplace(cur, id);
        out.verts.push_back(TupleVertex{spec.n(), cur});
      }
      return;
    }
    for (auto m : sides[j]) {
      cur[j] = m;
      self(self, j + 1);
    }
  };
  gen(gen, 0);

  out.sc.n_vertices = static_cast<int>(out.verts.size());
  for (const auto& v : out.verts) out.sc.labels.push_back(v.str());
  if (out.verts.empty()) return out;

  auto systems = detail::maximal_systems(sides, pred, budget);
  out.sc.facets = detail::systems_to_facets(systems, vertex_id);
  return out;
}

// The vertex of C_s(n,k,...,k) promised whenever sum s(i) >= r*k, built by
// the size-r recursion; returns nothing exactly when the sum is short.
inline std::optional<TupleVertex> construct_cs_vertex(const SVector& s, int r, int k) {
  if (s.r != r) throw input_error("construct_cs_vertex: uniformity mismatch");
  if (r < 1 || k < 0) throw input_error("construct_cs_vertex: bad parameters");
  const int n = s.n();
  if (s.nbar() < static_cast<long long>(r) * k) return std::nullopt;

  std::uint64_t full = s.full_multiplicity_mask();
  if (std::popcount(full) >= k) {
    // stack the multiplicity thresholds: A_i = { x : s(x) >= i }
    TupleVertex v;
    v.n = n;
    for (int i = 1; i <= r; ++i) {
      std::uint64_t m = 0;
      for (int x = 0; x < n; ++x)
        if (s.s[x] >= i) m |= std::uint64_t{1} << x;
      v.parts.push_back(m);
    }
    return v;
  }

  // pick the k elements of largest multiplicity (ties to the smaller index)
  std::vector<int> order(n);
  for (int x = 0; x < n; ++x) order[x] = x;
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return s.s[a] > s.s[b]; });
  std::uint64_t a1 = 0;
  for (int i = 0; i < k; ++i) a1 |= std::uint64_t{1} << order[i];

  SVector rest = s;
  rest.r = r - 1;
  for (int i = 0; i < k; ++i) rest.s[order[i]] -= 1;
  auto tail = construct_cs_vertex(rest, r - 1, k);
  if (!tail) return std::nullopt;  // unreachable: the sum stays >= (r-1)k

  TupleVertex v;
  v.n = n;
  v.parts.push_back(a1);
  for (auto m : tail->parts) v.parts.push_back(m);
  return v;
}

// ---------------------------------------------------------------------------
// Nerve
// ---------------------------------------------------------------------------

// Maximal nerve: one vertex per facet (in facet order); a collection of
// facets spans a face iff it has a common vertex.
inline SimplicialComplex nerve(const SimplicialComplex& sc) {
  SimplicialComplex out;
  out.n_vertices = static_cast<int>(sc.facets.size());
  for (const auto& f : sc.facets) {
    std::string l = "[";
    for (std::size_t i = 0; i < f.size(); ++i) l += (i ? " " : "") + std::to_string(f[i]);
    out.labels.push_back(l + "]");
  }
  std::vector<std::vector<int>> candidates;
  for (int v = 0; v < sc.n_vertices; ++v) {
    std::vector<int> holds;
    for (std::size_t fi = 0; fi < sc.facets.size(); ++fi)
      if (std::binary_search(sc.facets[fi].begin(), sc.facets[fi].end(), v))
        holds.push_back(static_cast<int>(fi));
    if (!holds.empty()) candidates.push_back(std::move(holds));
  }
  out.facets = canonicalize_facets(std::move(candidates));
  return out;
}

// ---------------------------------------------------------------------------
// The nerve isomorphism N(K_s) = C_s, checked on the nose through the
// canonical bijection: a C_s vertex (A_1,...,A_r) corresponds to the K_s
// facet of all tuples of k_j-subsets X_j inside A_j.
// ---------------------------------------------------------------------------
struct NerveIsoReport {
  bool pass = false;
  int cs_vertices = 0;
  int ks_facets = 0;
  std::string detail;  // empty on pass
};

inline NerveIsoReport nerve_iso_check(int n, const std::vector<int>& kvec,
                                      const SVector& s, const Budget& budget = {}) {
  NerveIsoReport rep;
  KsComplex ks = build_Ks(n, kvec, s, budget);
  CsComplex cs = build_Cs(n, kvec, s, budget);
  rep.cs_vertices = cs.sc.n_vertices;
  rep.ks_facets = static_cast<int>(ks.sc.facets.size());

  if (cs.sc.n_vertices != rep.ks_facets) {
    rep.detail = "vertex/facet count mismatch";
    return rep;
  }
  if (cs.sc.n_vertices == 0) {
    rep.pass = true;  // both empty
    return rep;
  }

  std::map<std::vector<std::uint64_t>, int> ks_id;
  for (int id = 0; id < ks.sc.n_vertices; ++id) ks_id.emplace(ks.verts[id].parts, id);

  const int r = s.r;
  std::vector<std::vector<int>> image_facets;  // image_facets[cs vertex id]
  for (int cid = 0; cid < cs.sc.n_vertices; ++cid) {
    std::vector<std::vector<std::uint64_t>> subs(r);
    for (int j = 0; j < r; ++j) {
      // all k_j-subsets of A_j
      auto elems = KSubset(n, cs.verts[cid].parts[j]).elements();
      int sz = static_cast<int>(elems.size());
      std::vector<int> comb(kvec[j]);
      for (int i = 0; i < kvec[j]; ++i) comb[i] = i;
      if (kvec[j] == 0) {
        subs[j].push_back(0);
      } else {
        while (true) {
          std::uint64_t m = 0;
          for (int c : comb) m |= std::uint64_t{1} << (elems[c] - 1);
          subs[j].push_back(m);
          int i = kvec[j] - 1;
          while (i >= 0 && comb[i] == sz - (kvec[j] - i)) --i;
          if (i < 0) break;
          ++comb[i];
          for (int t = i + 1; t < kvec[j]; ++t) comb[t] = comb[t - 1] + 1;
        }
      }
    }
    std::vector<int> facet;
    std::vector<std::uint64_t> sel(r);
    bool ok = true;
    auto walk = [&](auto&& self, int j) -> void {
      if (!ok) return;
      if (j == r) {
        auto it = ks_id.find(sel);
        if (it == ks_id.end()) {
          ok = false;
          return;
        }
        facet.push_back(it->second);
        return;
      }
      for (auto m : subs[j]) {
        sel[j] = m;
        self(self, j + 1);
      }
    };
    walk(walk, 0);
    if (!ok) {
      rep.detail = "image of " + cs.verts[cid].str() + " contains a non-vertex tuple";
      return rep;
    }
    std::sort(facet.begin(), facet.end());
    image_facets.push_back(std::move(facet));
  }

  // the images must be exactly the facets of K_s, each hit once
  std::map<std::vector<int>, int> facet_index;
  for (std::size_t fi = 0; fi < ks.sc.facets.size(); ++fi)
    facet_index.emplace(ks.sc.facets[fi], static_cast<int>(fi));
  std::vector<int> cs_to_facet(cs.sc.n_vertices, -1);
  std::vector<char> hit(ks.sc.facets.size(), 0);
  for (int cid = 0; cid < cs.sc.n_vertices; ++cid) {
    auto it = facet_index.find(image_facets[cid]);
    if (it == facet_index.end()) {
      rep.detail = "image of " + cs.verts[cid].str() + " is not a maximal face";
      return rep;
    }
    if (hit[it->second]) {
      rep.detail = "two vertices map to one maximal face";
      return rep;
    }
    hit[it->second] = 1;
    cs_to_facet[cid] = it->second;
  }

  // compare facet families: C_s facets against nerve facets, through the map
  SimplicialComplex nv = nerve(ks.sc);
  std::vector<std::vector<int>> mapped;
  for (const auto& f : cs.sc.facets) {
    std::vector<int> g;
    for (int cid : f) g.push_back(cs_to_facet[cid]);
    std::sort(g.begin(), g.end());
    mapped.push_back(std::move(g));
  }
  std::sort(mapped.begin(), mapped.end());
  if (mapped != nv.facets) {
    rep.detail = "facet families differ under the bijection";
    return rep;
  }
  rep.pass = true;
  return rep;
}

// ---------------------------------------------------------------------------
// A_1-restriction subcomplexes C^I and their retraction
// ---------------------------------------------------------------------------

// Induced subcomplex of C_s on the vertices with I inside A_1.
inline CsComplex restrict_CI(const CsComplex& cs, std::uint64_t I_mask) {
  if ((I_mask & ~cs.s.support_mask()) != 0)
    throw input_error("restrict_CI: I must lie in the support of s");
  CsComplex out;
  out.kvec = cs.kvec;
  out.s = cs.s;
  std::vector<int> new_id(cs.sc.n_vertices, -1);
  for (int id = 0; id < cs.sc.n_vertices; ++id) {
    if ((I_mask & ~cs.verts[id].parts[0]) == 0) {
      new_id[id] = static_cast<int>(out.verts.size());
      out.verts.push_back(cs.verts[id]);
    }
  }
  out.sc.n_vertices = static_cast<int>(out.verts.size());
  for (const auto& v : out.verts) out.sc.labels.push_back(v.str());
  std::vector<std::vector<int>> cut;
  for (const auto& f : cs.sc.facets) {
    std::vector<int> g;
    for (int id : f)
      if (new_id[id] >= 0) g.push_back(new_id[id]);
    if (!g.empty()) cut.push_back(std::move(g));
  }
  out.sc.facets = canonicalize_facets(std::move(cut));
  return out;
}

// Deterministic retraction of C^I onto the A_1 = I subcomplex: each element of
// A_1 \ I moves to the lowest-index later part missing it, restoring the exact
// multiplicities. Requires s(x) < r for the moved elements.
inline TupleVertex retract_CI(const TupleVertex& v, std::uint64_t I_mask,
                              const SVector& s, int k) {
  const int r = v.r();
  if (std::popcount(I_mask) < k)
    throw input_error("retract_CI: |I| must be at least k");
  if ((I_mask & ~s.support_mask()) != 0)
    throw input_error("retract_CI: I must lie in the support of s");
  if ((I_mask & ~v.parts[0]) != 0)
    throw input_error("retract_CI: vertex is outside C^I");
  TupleVertex out = v;
  std::uint64_t moved = v.parts[0] & ~I_mask;
  out.parts[0] = I_mask;
  for (std::uint64_t m = moved; m; m &= m - 1) {
    int x = std::countr_zero(m);
    if (s.s[x] == s.r)
      throw input_error("retract_CI: element with full multiplicity outside I");
    int placed = 0;
    for (int j = 1; j < r && !placed; ++j) {
      if (!((out.parts[j] >> x) & 1)) {
        out.parts[j] |= std::uint64_t{1} << x;
        placed = 1;
      }
    }
    if (!placed) throw std::logic_error("retract_CI: no part available");
  }
  return out;
}

}  // namespace kneser
