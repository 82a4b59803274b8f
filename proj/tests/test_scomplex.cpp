#include "kneser/homology.hpp"
#include "kneser/scomplex.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace kneser;

namespace {

SVector ones(int n, int r) { return SVector(std::vector<int>(n, 1), r); }

// brute-force face predicate for K_s: every mixed selection s-disjoint
bool ks_face_brute(const std::vector<TupleVertex>& tuple_set, const SVector& s) {
  const int r = s.r;
  std::vector<std::uint64_t> sel(r);
  auto walk = [&](auto&& self, int j) -> bool {
    if (j == r) return detail::tuple_s_disjoint(sel, s);
    for (const auto& t : tuple_set) {
      sel[j] = t.parts[j];
      if (!self(self, j + 1)) return false;
    }
    return true;
  };
  return walk(walk, 0);
}

// brute-force face predicate for C_s: common k_j-subset per coordinate
bool cs_face_brute(const std::vector<TupleVertex>& tuple_set,
                   const std::vector<int>& kvec) {
  for (std::size_t j = 0; j < kvec.size(); ++j) {
    std::uint64_t common = ~std::uint64_t{0};
    for (const auto& t : tuple_set) common &= t.parts[j];
    if (std::popcount(common) < kvec[j]) return false;
  }
  return true;
}

// brute-force facets of a complex given by a monotone predicate on id sets
template <typename Pred>
std::vector<std::vector<int>> brute_facets(int n_vertices, Pred pred) {
  REQUIRE(n_vertices <= 20);
  std::vector<std::vector<int>> faces;
  for (std::uint32_t m = 1; m < (1u << n_vertices); ++m) {
    std::vector<int> ids;
    for (int i = 0; i < n_vertices; ++i)
      if ((m >> i) & 1) ids.push_back(i);
    if (pred(ids)) faces.push_back(std::move(ids));
  }
  return canonicalize_facets(std::move(faces));
}

long long count_faces(const SimplicialComplex& sc) {
  std::set<std::vector<int>> seen;
  for (const auto& f : sc.facets) {
    std::vector<std::vector<int>> stack = {f};
    seen.insert(f);
    // enumerate all nonempty subsets of each facet
    std::vector<int> idx;
    auto rec = [&](auto&& self, std::size_t from, std::vector<int>& cur) -> void {
      if (!cur.empty()) seen.insert(cur);
      for (std::size_t i = from; i < f.size(); ++i) {
        cur.push_back(f[i]);
        self(self, i + 1, cur);
        cur.pop_back();
      }
    };
    std::vector<int> cur;
    rec(rec, 0, cur);
  }
  return static_cast<long long>(seen.size());
}

}  // namespace

TEST_CASE("canonicalize_facets and maximal_facets") {
  SECTION("boundary of a triangle stays three edges") {
    auto sc = complex_from_faces(3, {{0, 1}, {1, 2}, {0, 2}, {0}, {1}, {2}});
    CHECK(sc.facets == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
    CHECK(maximal_facets(sc) == sc.facets);
  }
  SECTION("a single simplex is its own facet") {
    auto sc = complex_from_faces(3, {{0, 1, 2}, {0, 1}, {2}});
    CHECK(sc.facets == std::vector<std::vector<int>>{{0, 1, 2}});
  }
  SECTION("duplicates and orderings are normalized") {
    auto sc = complex_from_faces(3, {{2, 0}, {0, 2}, {1}});
    CHECK(sc.facets == std::vector<std::vector<int>>{{0, 2}, {1}});
  }
}

TEST_CASE("build_E and face counts") {
  SECTION("n=2, p=2 is a 4-cycle") {
    auto e = build_E(2, 2);
    CHECK(e.sc.n_vertices == 4);
    CHECK(e.sc.facets.size() == 4);
    CHECK(e.sc.dim() == 1);
    CHECK(count_faces(e.sc) == 8);  // 3^2 - 1
  }
  SECTION("n=3, p=2 has 26 nonempty faces") {
    auto e = build_E(3, 2);
    CHECK(count_faces(e.sc) == 26);
    CHECK(enumerate_E_faces(3, 2).size() == 26);
  }
  SECTION("n=2, p=3 has 6 vertices and 15 faces") {
    auto e = build_E(2, 3);
    CHECK(e.sc.n_vertices == 6);
    CHECK(count_faces(e.sc) == 15);
  }
  SECTION("(p+1)^n - 1 face count, p in {2,3}, n <= 6") {
    for (int p : {2, 3})
      for (int n = 1; n <= 6; ++n) {
        long long expect = 1;
        for (int j = 0; j < n; ++j) expect *= p + 1;
        expect -= 1;
        CHECK(static_cast<long long>(enumerate_E_faces(n, p).size()) == expect);
        if (n <= 4) CHECK(count_faces(build_E(n, p).sc) == expect);
      }
  }
  SECTION("p must be prime") {
    CHECK_THROWS_AS(build_E(2, 4), input_error);
    CHECK_THROWS_AS(enumerate_E_faces(2, 6), input_error);
  }
}

TEST_CASE("zp_act is a free action") {
  SECTION("identity and a sign swap") {
    ZpFace a(2, 3);
    a.sign[0] = 0;  // (0,1)
    a.sign[2] = 1;  // (1,3)
    CHECK(zp_act(0, a) == a);
    ZpFace b = zp_act(1, a);
    CHECK(b.sign[0] == 1);
    CHECK(b.sign[2] == 0);
  }
  SECTION("orbits of nonempty faces have size p; faces map to faces") {
    for (int p : {2, 3})
      for (int n = 1; n <= 4; ++n)
        for (const auto& f : enumerate_E_faces(n, p)) {
          std::set<std::uint64_t> orbit;
          for (int w = 0; w < p; ++w) {
            ZpFace g = zp_act(w, f);
            CHECK(g.position_mask() == f.position_mask());
            orbit.insert(zp_face_id(g));
            if (w != 0) CHECK_FALSE(g == f);
          }
          CHECK(orbit.size() == static_cast<std::size_t>(p));
        }
  }
}

TEST_CASE("build_Ks") {
  SECTION("n=2, kvec=(1,1), s=1: two isolated points") {
    auto ks = build_Ks(2, {1, 1}, ones(2, 2));
    CHECK(ks.sc.n_vertices == 2);
    CHECK(ks.sc.facets == std::vector<std::vector<int>>{{0}, {1}});
  }
  SECTION("n=3, kvec=(1,1), s=1: six vertices") {
    auto ks = build_Ks(3, {1, 1}, ones(3, 2));
    CHECK(ks.sc.n_vertices == 6);
    // faces = pairs with compatible mixed selections; cross-check facets
    auto brute = brute_facets(6, [&](const std::vector<int>& ids) {
      std::vector<TupleVertex> ts;
      for (int id : ids) ts.push_back(ks.verts[id]);
      return ks_face_brute(ts, ks.s);
    });
    CHECK(ks.sc.facets == brute);
  }
  SECTION("s = r: one facet containing every tuple") {
    auto ks = build_Ks(3, {1, 1}, SVector({2, 2, 2}, 2));
    CHECK(ks.sc.n_vertices == 9);
    REQUIRE(ks.sc.facets.size() == 1);
    CHECK(ks.sc.facets[0].size() == 9);
  }
  SECTION("facets match brute force across small instances") {
    for (int n = 2; n <= 3; ++n)
      for (int r = 2; r <= 3; ++r)
        for (int k = 1; k <= 2; ++k) {
          std::vector<int> s(n, 1);
          while (true) {
            auto ks = build_Ks(n, std::vector<int>(r, k), SVector(s, r));
            if (ks.sc.n_vertices > 0 && ks.sc.n_vertices <= 14) {
              auto brute = brute_facets(ks.sc.n_vertices, [&](const std::vector<int>& ids) {
                std::vector<TupleVertex> ts;
                for (int id : ids) ts.push_back(ks.verts[id]);
                return ks_face_brute(ts, ks.s);
              });
              CHECK(ks.sc.facets == brute);
            }
            int i = n - 1;
            while (i >= 0 && s[i] == r) s[i--] = 1;
            if (i < 0) break;
            ++s[i];
          }
        }
  }
}

TEST_CASE("build_Cs") {
  SECTION("n=3, kvec=(1,1), s=1: the six ordered set partitions") {
    auto cs = build_Cs(3, {1, 1}, ones(3, 2));
    CHECK(cs.sc.n_vertices == 6);
    for (const auto& v : cs.verts) {
      CHECK((v.parts[0] | v.parts[1]) == 0b111);
      CHECK((v.parts[0] & v.parts[1]) == 0);
    }
  }
  SECTION("sum s below rk: empty") {
    auto cs = build_Cs(3, {2, 2}, ones(3, 2));
    CHECK(cs.sc.n_vertices == 0);
    CHECK(cs.sc.empty());
  }
  SECTION("kvec = 0: nonempty whenever tuples exist") {
    auto cs = build_Cs(2, {0, 0}, SVector({1, 0}, 2));
    CHECK(cs.sc.n_vertices > 0);
    REQUIRE(cs.sc.facets.size() == 1);  // the witness condition is vacuous
  }
  SECTION("facets match brute force across small instances") {
    for (int n = 2; n <= 3; ++n)
      for (int r = 2; r <= 3; ++r)
        for (int k = 1; k <= 2; ++k) {
          std::vector<int> s(n, 0);
          while (true) {
            auto cs = build_Cs(n, std::vector<int>(r, k), SVector(s, r));
            if (cs.sc.n_vertices > 0 && cs.sc.n_vertices <= 16) {
              auto brute = brute_facets(cs.sc.n_vertices, [&](const std::vector<int>& ids) {
                std::vector<TupleVertex> ts;
                for (int id : ids) ts.push_back(cs.verts[id]);
                return cs_face_brute(ts, cs.kvec);
              });
              CHECK(cs.sc.facets == brute);
            }
            int i = n - 1;
            while (i >= 0 && s[i] == r) s[i--] = 0;
            if (i < 0) break;
            ++s[i];
          }
        }
  }
}

TEST_CASE("build_box_complex") {
  SECTION("KG^2(4,2) singletons: six ordered disjoint pairs") {
    auto spec = HypergraphSpec::partition(4, 2, 2, Partition::singletons(4));
    auto box = build_box_complex(spec);
    CHECK(box.sc.n_vertices == 6);
  }
  SECTION("single-edge graph: two isolated vertices") {
    // n=4, k=2, blocks {1,2},{3,4}: admissible vertices 13,14,23,24; only some
    // disjoint pairs. Use a 2-vertex instance instead: n=4 k=2 with blocks
    // chosen so exactly one edge exists is fiddly; take K_2 via k=1, n=2.
    auto spec = HypergraphSpec::partition(2, 1, 2, Partition::singletons(2));
    auto box = build_box_complex(spec);
    CHECK(box.sc.n_vertices == 2);  // (1,2) and (2,1)
    CHECK(box.sc.facets == std::vector<std::vector<int>>{{0}, {1}});
  }
  SECTION("empty edge set gives an empty complex") {
    // blocks of size 2 on n=4=rk with k=2: vertices exist but no disjoint
    // admissible pair... {1,3},{2,4} are disjoint; use S with a zero instead
    auto spec = HypergraphSpec::general_s(4, 2, SVector({1, 1, 1, 0}, 2));
    auto box = build_box_complex(spec);
    CHECK(box.sc.n_vertices == 0);
    CHECK(box.sc.empty());
  }
  SECTION("for kvec=(k,...,k), K_s equals the box complex of KG^r_S") {
    for (int r = 2; r <= 3; ++r)
      for (int k = 1; k <= 2; ++k)
        for (int n = r * k; n <= r * k + 1 && n <= 6; ++n) {
          SVector s = ones(n, r);
          auto ks = build_Ks(n, std::vector<int>(r, k), s);
          auto box = build_box_complex(HypergraphSpec::general_s(n, k, s));
          REQUIRE(ks.sc.n_vertices == box.sc.n_vertices);
          // same vertex order: both enumerate tuples lexicographically
          for (int id = 0; id < ks.sc.n_vertices; ++id)
            CHECK(ks.verts[id].parts == box.verts[id].parts);
          CHECK(ks.sc.facets == box.sc.facets);
        }
  }
  SECTION("cyclic shift preserves the facet family") {
    auto spec = HypergraphSpec::partition(5, 2, 2, Partition::singletons(5));
    auto box = build_box_complex(spec);
    std::map<std::vector<std::uint64_t>, int> id_of;
    for (int id = 0; id < box.sc.n_vertices; ++id) id_of.emplace(box.verts[id].parts, id);
    std::vector<std::vector<int>> shifted;
    for (const auto& f : box.sc.facets) {
      std::vector<int> g;
      for (int id : f) g.push_back(id_of.at(zr_shift(box.verts[id]).parts));
      std::sort(g.begin(), g.end());
      shifted.push_back(std::move(g));
    }
    std::sort(shifted.begin(), shifted.end());
    CHECK(shifted == box.sc.facets);
  }
}

TEST_CASE("construct_cs_vertex") {
  SECTION("full-multiplicity branch") {
    auto v = construct_cs_vertex(SVector({2, 2}, 2), 2, 2);
    REQUIRE(v.has_value());
    CHECK(v->parts == std::vector<std::uint64_t>{0b11, 0b11});
  }
  SECTION("recursive branch, r=2 k=1 on three ones") {
    auto v = construct_cs_vertex(ones(3, 2), 2, 1);
    REQUIRE(v.has_value());
    CHECK(v->parts[0] == 0b001);  // largest multiplicities, ties to low index
    CHECK(v->parts[1] == 0b110);
  }
  SECTION("short sum yields nothing") {
    CHECK_FALSE(construct_cs_vertex(ones(3, 2), 2, 2).has_value());
  }
  SECTION("partial support with a full-multiplicity element") {
    // s=(2,2,1), r=2, k=2: stacked thresholds give ({1,2,3},{1,2})
    auto v = construct_cs_vertex(SVector({2, 2, 1}, 2), 2, 2);
    REQUIRE(v.has_value());
    CHECK(v->parts == std::vector<std::uint64_t>{0b111, 0b011});
  }
  SECTION("success iff the sum reaches rk, and the result is a vertex") {
    for (int n = 1; n <= 4; ++n)
      for (int r = 1; r <= 3; ++r)
        for (int k = 0; k <= 2 && k <= n; ++k) {
          std::vector<int> s(n, 0);
          while (true) {
            SVector sv(s, r);
            auto v = construct_cs_vertex(sv, r, k);
            bool expect = sv.nbar() >= static_cast<long long>(r) * k;
            CHECK(v.has_value() == expect);
            if (v) {
              // exact multiplicities and part sizes
              for (int x = 0; x < n; ++x) {
                int count = 0;
                for (auto m : v->parts) count += (m >> x) & 1;
                CHECK(count == s[x]);
              }
              for (auto m : v->parts) CHECK(std::popcount(m) >= k);
            }
            int i = n - 1;
            while (i >= 0 && s[i] == r) s[i--] = 0;
            if (i < 0) break;
            ++s[i];
          }
        }
  }
}

TEST_CASE("nerve") {
  SECTION("two triangles sharing an edge collapse to an edge") {
    auto sc = complex_from_faces(4, {{0, 1, 2}, {1, 2, 3}});
    auto nv = nerve(sc);
    CHECK(nv.n_vertices == 2);
    CHECK(nv.facets == std::vector<std::vector<int>>{{0, 1}});
  }
  SECTION("boundary of a triangle maps to a triangle boundary") {
    auto sc = complex_from_faces(3, {{0, 1}, {1, 2}, {0, 2}});
    auto nv = nerve(sc);
    CHECK(nv.n_vertices == 3);
    CHECK(nv.facets == std::vector<std::vector<int>>{{0, 1}, {0, 2}, {1, 2}});
  }
  SECTION("a single simplex becomes a point") {
    auto sc = complex_from_faces(3, {{0, 1, 2}});
    auto nv = nerve(sc);
    CHECK(nv.n_vertices == 1);
    CHECK(nv.facets == std::vector<std::vector<int>>{{0}});
  }
  SECTION("the 4-cycle nerve is again a 4-cycle") {
    auto e = build_E(2, 2);
    auto nv = nerve(e.sc);
    CHECK(nv.n_vertices == 4);
    CHECK(nv.facets.size() == 4);
    for (const auto& f : nv.facets) CHECK(f.size() == 2);
  }
}

TEST_CASE("nerve_iso_check") {
  SECTION("n=3 and n=4, kvec=(1,1), s=1") {
    auto rep3 = nerve_iso_check(3, {1, 1}, ones(3, 2));
    CHECK(rep3.pass);
    CHECK(rep3.cs_vertices == 6);
    CHECK(rep3.ks_facets == 6);
    auto rep4 = nerve_iso_check(4, {1, 1}, ones(4, 2));
    CHECK(rep4.pass);
  }
  SECTION("degenerate: both sides empty") {
    auto rep = nerve_iso_check(3, {2, 2}, ones(3, 2));
    CHECK(rep.pass);
    CHECK(rep.cs_vertices == 0);
    CHECK(rep.ks_facets == 0);
  }
  SECTION("mixed k-vector") {
    auto rep = nerve_iso_check(4, {2, 1}, ones(4, 2));
    CHECK(rep.pass);
    auto rep2 = nerve_iso_check(4, {2, 1}, SVector({2, 1, 1, 1}, 2));
    CHECK(rep2.pass);
  }
}

TEST_CASE("restrict_CI and retract_CI") {
  SECTION("spec example: s=1, r=2, k=1, n=3, I={1}") {
    auto cs = build_Cs(3, {1, 1}, ones(3, 2));
    auto ci = restrict_CI(cs, 0b001);
    // vertices with 1 in A_1: ({1},{2,3}), ({1,2},{3}), ({1,3},{2}), ({1,2,3} impossible: exact mult)
    CHECK(ci.sc.n_vertices == 3);
    TupleVertex v{3, {0b011, 0b100}};  // ({1,2},{3})
    auto rv = retract_CI(v, 0b001, cs.s, 1);
    CHECK(rv.parts == std::vector<std::uint64_t>{0b001, 0b110});  // ({1},{2,3})
  }
  SECTION("fixed point when A_1 equals I") {
    auto cs = build_Cs(3, {1, 1}, ones(3, 2));
    TupleVertex v{3, {0b001, 0b110}};
    auto rv = retract_CI(v, 0b001, cs.s, 1);
    CHECK(rv.parts == v.parts);
  }
  SECTION("retraction output is a vertex and {v, r(v)} is a face") {
    for (int n = 3; n <= 4; ++n) {
      SVector s = ones(n, 2);
      auto cs = build_Cs(n, {1, 1}, s);
      std::uint64_t I = 0b001;
      auto ci = restrict_CI(cs, I);
      for (const auto& v : ci.verts) {
        auto rv = retract_CI(v, I, s, 1);
        // exact multiplicities preserved
        for (int x = 0; x < n; ++x) {
          int count = 0;
          for (auto m : rv.parts) count += (m >> x) & 1;
          CHECK(count == s.s[x]);
        }
        CHECK(rv.parts[0] == I);
        CHECK(cs_face_brute({v, rv}, cs.kvec));
      }
    }
  }
  SECTION("input validation") {
    auto cs = build_Cs(3, {1, 1}, ones(3, 2));
    TupleVertex v{3, {0b011, 0b100}};
    CHECK_THROWS_AS(retract_CI(v, 0b110, cs.s, 1), input_error);  // I not in A_1
    CHECK_THROWS_AS(retract_CI(v, 0b001, cs.s, 2), input_error);  // |I| < k
    CHECK_THROWS_AS(restrict_CI(cs, 0b1000), input_error);        // outside support
    // full-multiplicity element outside I cannot be redistributed
    SVector s2({2, 1, 1}, 2);
    auto cs2 = build_Cs(3, {1, 1}, s2);
    TupleVertex w{3, {0b011, 0b101}};  // 1 has s=2: in both parts
    CHECK_THROWS_AS(retract_CI(w, 0b010, s2, 1), input_error);
  }
}

TEST_CASE("C^I has the homology of the one-part-smaller complex") {
  // deleting coordinate one over I and decrementing s on I preserves Betti
  // numbers, the homological shadow of the deformation retraction
  struct Case {
    int n, r, k;
    std::vector<int> s;
    std::uint64_t I;
  };
  std::vector<Case> cases = {
      {3, 2, 1, {1, 1, 1}, 0b001},
      {4, 2, 1, {1, 1, 1, 1}, 0b001},
      {4, 2, 2, {1, 1, 1, 1}, 0b011},
      {4, 2, 1, {2, 1, 1, 1}, 0b001},
      {4, 3, 1, {1, 1, 1, 1}, 0b001},
      {3, 3, 1, {2, 2, 2}, 0b001},
      {3, 3, 2, {2, 2, 2}, 0b011},
  };
  for (const auto& c : cases) {
    SVector s(c.s, c.r);
    auto cs = build_Cs(c.n, std::vector<int>(c.r, c.k), s);
    auto ci = restrict_CI(cs, c.I);
    SVector srest = s;
    srest.r = c.r - 1;
    for (int x = 0; x < c.n; ++x)
      if ((c.I >> x) & 1) srest.s[x] -= 1;
    auto rest = build_Cs(c.n, std::vector<int>(c.r - 1, c.k), srest);
    REQUIRE(ci.sc.empty() == rest.sc.empty());
    if (ci.sc.empty()) continue;
    auto pa = kneser::betti_numbers(ci.sc);
    auto pb = kneser::betti_numbers(rest.sc);
    auto trim = [](std::vector<long long> b) {
      while (!b.empty() && b.back() == 0) b.pop_back();
      return b;
    };
    CHECK(trim(pa.reduced_betti) == trim(pb.reduced_betti));
  }
}
