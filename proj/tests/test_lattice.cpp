#include <doctest.h>

#include "gonal/lattice.hpp"
#include "gonal/rng.hpp"
#include "support/oracles.hpp"

using namespace gonal;

TEST_SUITE_BEGIN("lattice");

TEST_CASE("convex hull examples") {
    LatticePolygon tri = LatticePolygon::hull({{0, 0}, {3, 0}, {0, 2}, {1, 1}});
    CHECK(tri.vertices() == std::vector<LatticePoint>{{0, 0}, {3, 0}, {0, 2}});

    LatticePolygon pt = LatticePolygon::hull({{0, 0}});
    CHECK(pt.dimension() == 0);

    LatticePolygon pent = LatticePolygon::hull({{0, 0}, {0, 2}, {9, 2}, {10, 1}, {10, 0}});
    CHECK(pent.vertices() ==
          std::vector<LatticePoint>{{0, 0}, {10, 0}, {10, 1}, {9, 2}, {0, 2}});
    CHECK(pent.dimension() == 2);

    LatticePolygon seg = LatticePolygon::hull({{0, 0}, {2, 2}, {1, 1}});
    CHECK(seg.dimension() == 1);
    CHECK(seg.vertices() == std::vector<LatticePoint>{{0, 0}, {2, 2}});
}

TEST_CASE("hull is idempotent") {
    SeededRng rng(12);
    for (int iter = 0; iter < 100; ++iter) {
        LatticePolygon p = oracles::random_convex_polygon(rng);
        CHECK(LatticePolygon::hull(p.vertices()) == p);
    }
}

TEST_CASE("lattice counts examples") {
    LatticePolygon tri = LatticePolygon::hull({{0, 0}, {3, 0}, {0, 2}});
    LatticeCounts c = lattice_counts(tri);
    CHECK(c.interior == 1);
    CHECK(c.boundary == 6);

    LatticePolygon sq = LatticePolygon::hull({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    c = lattice_counts(sq);
    CHECK(c.interior == 0);
    CHECK(c.boundary == 4);

    LatticePolygon pent = LatticePolygon::hull({{0, 0}, {0, 2}, {9, 2}, {10, 1}, {10, 0}});
    CHECK(lattice_counts(pent).interior == 9);

    CHECK_THROWS_AS(lattice_counts(LatticePolygon::hull({{0, 0}, {3, 3}})),
                    DegeneratePolygonError);
}

TEST_CASE("edge lattice counts") {
    CHECK(edge_lattice_count({0, 0}, {0, 2}) == 3);
    CHECK(edge_lattice_count({9, 2}, {10, 1}) == 2);
    CHECK(edge_lattice_count({0, 0}, {6, 4}) == 3);
    CHECK_THROWS_AS(edge_lattice_count({1, 1}, {1, 1}), InvalidArgumentError);
}

TEST_CASE("Pick vs row scan on random polygons") {
    SeededRng rng(2024);
    for (int iter = 0; iter < 500; ++iter) {
        LatticePolygon p = oracles::random_convex_polygon(rng, 12, 30);
        LatticeCounts c = lattice_counts(p);
        CHECK(c.interior == interior_by_pick(p));
        CHECK(p.twice_area() == 2 * c.interior + c.boundary - 2);  // Pick identity
    }
}

TEST_CASE("delta_r examples") {
    std::vector<long long> lp2{0, 1, 1};  // gamma=2, k'=(1,0)
    LatticePolygon d9 = delta_r(2, lp2, 9);
    CHECK(d9 == LatticePolygon::hull({{0, 0}, {0, 2}, {9, 2}, {10, 1}, {10, 0}}));

    std::vector<long long> lp3{0, 2, 3, 3};  // gamma=3, k'=(2,1,0)
    LatticePolygon d14 = delta_r(3, lp3, 14);
    CHECK(d14 == LatticePolygon::hull({{0, 0}, {0, 3}, {14, 3}, {16, 2}, {17, 1}, {17, 0}}));
    CHECK(lattice_counts(d14).interior == 31);

    LatticePolygon d1 = delta_r(2, lp2, 1);
    CHECK(d1 == LatticePolygon::hull({{0, 0}, {0, 2}, {1, 2}, {2, 1}, {2, 0}}));

    CHECK_THROWS_AS(delta_r(2, lp2, 0), DegeneratePolygonError);
    // non-strictly-decreasing k' ((1,1) gives l' = (0,1,2)) is rejected
    std::vector<long long> bad{0, 1, 2};
    CHECK_THROWS_AS(delta_r(2, bad, 5), DegeneratePolygonError);
}

TEST_CASE("delta_r interior progression in r") {
    std::vector<long long> lp2{0, 1, 1};
    std::vector<long long> lp3{0, 2, 3, 3};
    std::vector<long long> lp4{0, 4, 7, 8, 8};  // gamma=4, k'=(4,3,1,0)
    for (long long r = 1; r <= 12; ++r) {
        CHECK(lattice_counts(delta_r(2, lp2, r + 1)).interior -
                  lattice_counts(delta_r(2, lp2, r)).interior ==
              1);
        CHECK(lattice_counts(delta_r(3, lp3, r + 1)).interior -
                  lattice_counts(delta_r(3, lp3, r)).interior ==
              2);
        CHECK(lattice_counts(delta_r(4, lp4, r + 1)).interior -
                  lattice_counts(delta_r(4, lp4, r)).interior ==
              3);
    }
}

TEST_SUITE_END();
