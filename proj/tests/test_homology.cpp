#include "kneser/homology.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kneser;

namespace {

SVector ones(int n, int r) { return SVector(std::vector<int>(n, 1), r); }

long long euler_from_profile(const HomologyProfile& p) {
  long long e = 1;
  for (std::size_t d = 0; d < p.reduced_betti.size(); ++d)
    e += (d % 2 == 0 ? p.reduced_betti[d] : -p.reduced_betti[d]);
  return e;
}

}  // namespace

TEST_CASE("smith_normal_form") {
  SECTION("identity") {
    auto r = smith_normal_form({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(r.rank == 3);
    CHECK(r.factors == std::vector<BigInt>{1, 1, 1});
  }
  SECTION("diag(2,3) normalizes to (1,6)") {
    auto r = smith_normal_form({{2, 0}, {0, 3}});
    CHECK(r.rank == 2);
    CHECK(r.factors == std::vector<BigInt>{1, 6});
  }
  SECTION("zero and empty matrices") {
    CHECK(smith_normal_form({{0, 0}, {0, 0}}).rank == 0);
    CHECK(smith_normal_form({}).rank == 0);
  }
  SECTION("torsion entry survives mixed rows") {
    // [[2,4],[4,2]] ~ det -12, gcd 2 -> factors (2,6)
    auto r = smith_normal_form({{2, 4}, {4, 2}});
    CHECK(r.rank == 2);
    CHECK(r.factors == std::vector<BigInt>{2, 6});
  }
  SECTION("rank deficiency") {
    auto r = smith_normal_form({{1, 2, 3}, {2, 4, 6}, {1, 1, 1}});
    CHECK(r.rank == 2);
  }
}

TEST_CASE("betti_numbers on reference complexes") {
  SECTION("boundary of a triangle is a circle") {
    auto sc = complex_from_faces(3, {{0, 1}, {1, 2}, {0, 2}});
    auto p = betti_numbers(sc);
    REQUIRE_FALSE(p.empty_complex);
    CHECK(p.reduced_betti == std::vector<long long>{0, 1});
    CHECK(p.torsion[0].empty());
    CHECK(p.torsion[1].empty());
    CHECK(p.euler == 0);
  }
  SECTION("boundary of a tetrahedron is a 2-sphere") {
    auto sc = complex_from_faces(4, {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    auto p = betti_numbers(sc);
    CHECK(p.reduced_betti == std::vector<long long>{0, 0, 1});
    CHECK(p.euler == 2);
  }
  SECTION("E_1(Z2) is a circle") {
    auto p = betti_numbers(build_E(2, 2).sc);
    CHECK(p.reduced_betti == std::vector<long long>{0, 1});
  }
  SECTION("E_1(Z3) is a wedge of four circles") {
    auto p = betti_numbers(build_E(2, 3).sc);
    CHECK(p.reduced_betti == std::vector<long long>{0, 4});
  }
  SECTION("two disjoint points") {
    auto sc = complex_from_faces(2, {{0}, {1}});
    auto p = betti_numbers(sc);
    CHECK(p.reduced_betti == std::vector<long long>{1});
    CHECK(p.euler == 2);
  }
  SECTION("a single simplex short-circuits to trivial homology") {
    auto sc = complex_from_faces(30, {std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9,
                                                       10, 11, 12, 13, 14, 15, 16, 17,
                                                       18, 19, 20, 21, 22, 23, 24, 25,
                                                       26, 27, 28, 29}});
    auto p = betti_numbers(sc);  // 2^30 faces would never enumerate
    for (auto b : p.reduced_betti) CHECK(b == 0);
    CHECK(p.euler == 1);
  }
  SECTION("projective plane: 2-torsion in dimension one") {
    auto sc = complex_from_faces(
        7, {{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6},
            {2, 3, 5}, {3, 5, 6}, {3, 4, 6}, {2, 4, 6}, {2, 4, 5}});
    auto p = betti_numbers(sc);
    CHECK(p.reduced_betti == std::vector<long long>{0, 0, 0});
    CHECK(p.torsion[1] == std::vector<long long>{2});
    CHECK(p.euler == 1);
  }
  SECTION("empty complex is flagged") {
    SimplicialComplex sc;
    CHECK(betti_numbers(sc).empty_complex);
  }
}

TEST_CASE("euler characteristic consistency") {
  std::vector<SimplicialComplex> cases = {
      build_E(2, 2).sc, build_E(3, 2).sc, build_E(2, 3).sc,
      build_Cs(3, {1, 1}, ones(3, 2)).sc,
      build_Ks(3, {1, 1}, ones(3, 2)).sc,
      complex_from_faces(3, {{0, 1}, {1, 2}, {0, 2}}),
  };
  for (const auto& sc : cases) {
    auto p = betti_numbers(sc);
    CHECK(p.euler == euler_from_profile(p));
  }
}

TEST_CASE("homological_connectivity") {
  SECTION("empty complex") {
    SimplicialComplex sc;
    CHECK(homological_connectivity(sc) == kConnEmpty);
  }
  SECTION("two disjoint points") {
    auto sc = complex_from_faces(2, {{0}, {1}});
    CHECK(homological_connectivity(sc) == -1);
  }
  SECTION("C_s(3,(1,1)) with s=1 is a hexagon: connectivity exactly 0") {
    auto cs = build_Cs(3, {1, 1}, ones(3, 2));
    auto p = betti_numbers(cs.sc);
    CHECK(p.reduced_betti == std::vector<long long>{0, 1});
    CHECK(homological_connectivity(cs.sc) == 0);
  }
  SECTION("simplex is infinitely connected") {
    auto sc = complex_from_faces(3, {{0, 1, 2}});
    CHECK(homological_connectivity(sc) == kConnInfinite);
  }
  SECTION("bounded check agrees with the full computation") {
    std::vector<SimplicialComplex> cases = {
        complex_from_faces(2, {{0}, {1}}),
        complex_from_faces(3, {{0, 1}, {1, 2}, {0, 2}}),
        build_E(2, 3).sc,
        build_E(3, 2).sc,
        build_Cs(3, {1, 1}, ones(3, 2)).sc,
    };
    for (const auto& sc : cases) {
      int conn = homological_connectivity(sc);
      for (int c = -2; c <= conn + 1 && c <= 4; ++c)
        CHECK(connectivity_at_least(sc, c) == (c <= conn));
    }
  }
}

TEST_CASE("afl_lower_bound") {
  CHECK(afl_lower_bound(0, 2).value == 3);
  CHECK(afl_lower_bound(-1, 2).value == 2);
  CHECK(afl_lower_bound(-2, 2).value == 0);
  CHECK(afl_lower_bound(-5, 3).value == 0);
  CHECK(afl_lower_bound(1, 3).value == 3);  // ceil(5/2)
  CHECK(afl_lower_bound(0, 2).prime_hypothesis);
  CHECK_FALSE(afl_lower_bound(0, 4).prime_hypothesis);
  CHECK_THROWS_AS(afl_lower_bound(0, 1), input_error);
}

TEST_CASE("box complex of the Petersen instance") {
  auto spec = HypergraphSpec::general_s(5, 2, ones(5, 2));
  auto box = build_box_complex(spec);
  CHECK(box.sc.n_vertices == 30);
  CHECK(box.sc.facets.size() == 20);
  auto p = betti_numbers(box.sc);
  CHECK(p.reduced_betti == std::vector<long long>{0, 11, 0});
  CHECK(homological_connectivity(box.sc) == 0);
  CHECK(afl_lower_bound(0, 2).value == 3);
}

TEST_CASE("face budget produces resource errors") {
  // 20 facets of 15 vertices each around a shared core: too many faces
  std::vector<std::vector<int>> facets;
  for (int base = 0; base < 20; ++base) {
    std::vector<int> f;
    for (int i = 0; i < 15; ++i) f.push_back(base * 3 + i);
    facets.push_back(f);
  }
  auto sc = complex_from_faces(70, facets);
  Budget small;
  small.max_faces = 5000;
  CHECK_THROWS_AS(betti_numbers(sc, small), budget_error);
}
