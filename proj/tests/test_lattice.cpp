#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dirspec/lattice.hpp"

using namespace dirspec;

namespace {

struct Rng {
    unsigned long long s = 0x243f6a8885a308d3ULL;
    unsigned long long next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<unsigned long long>(hi - lo + 1));
    }
};

// random unimodular triple via row operations on the identity
void random_unimodular(Rng& rng, IntVec3& a, IntVec3& b, IntVec3& c) {
    a = {1, 0, 0};
    b = {0, 1, 0};
    c = {0, 0, 1};
    IntVec3* rows[3] = {&a, &b, &c};
    for (int i = 0; i < 8; ++i) {
        int dst = static_cast<int>(rng.range(0, 2));
        int src = static_cast<int>(rng.range(0, 2));
        if (dst == src) continue;
        Int mul(rng.range(-4, 4));
        *rows[dst] = *rows[dst] + mul * *rows[src];
    }
}

}  // namespace

TEST_CASE("unimodularity") {
    CHECK(is_unimodular({1, 0, 0}, {0, 1, 0}, {0, 0, 1}));
    CHECK_FALSE(is_unimodular({1, 0, 0}, {0, 1, 0}, {0, 0, 2}));
    CHECK(is_unimodular({1, 0, 0}, {3, 1, 0}, {5, 7, 1}));
}

TEST_CASE("basis expansion inverts exactly") {
    Rng rng;
    for (int i = 0; i < 100; ++i) {
        IntVec3 a, b, c;
        random_unimodular(rng, a, b, c);
        IntVec3 w{Int(rng.range(-20, 20)), Int(rng.range(-20, 20)), Int(rng.range(-20, 20))};
        Expansion e = expand_in_basis(w, a, b, c);
        CHECK(e.c1 * a + e.c2 * b + e.c3 * c == w);
    }
}

TEST_CASE("frame construction") {
    Frame id = build_frame({1, 0, 0}, {0, 1, 0}, {0, 0, 1});
    CHECK(id.q == 1);
    CHECK(id.a0 == 0);
    CHECK(id.d_sq == 1);
    CHECK(id.h_sq == 1);
    CHECK(id.f_over_d == 0);

    Frame fr = build_frame({5, 1, 0}, {1, 0, 0}, {0, 0, 1});
    CHECK(fr.d_sq == make_rat(1, 25));
    CHECK(fr.h_sq == 1);

    // q^2 d^2 h^2 = 1 for every frame built from a unimodular triple
    Rng rng;
    int built = 0;
    for (int i = 0; i < 300 && built < 60; ++i) {
        IntVec3 a, b, c;
        random_unimodular(rng, a, b, c);
        if (sgn(a.q) <= 0) continue;
        try {
            Frame f = build_frame(a, b, c);
            CHECK(Rat(f.q) * Rat(f.q) * f.d_sq * f.h_sq == 1);
            ++built;
        } catch (const DomainError&) {
            // degenerate draw
        }
    }
    CHECK(built > 20);

    CHECK_THROWS_AS(build_frame({1, 0, 0}, {0, 1, 0}, {0, 0, 2}), DomainError);
    // collinear second vector (zero deviation from the axis)
    CHECK_THROWS_AS(build_frame({1, 0, 0}, {2, 0, 0}, {0, -1, 17}), DomainError);
}

TEST_CASE("natural coordinates of the basis and of combinations") {
    Rng rng;
    for (int i = 0; i < 60; ++i) {
        IntVec3 a, b, c;
        random_unimodular(rng, a, b, c);
        if (sgn(a.q) <= 0) continue;
        Frame f;
        try {
            f = build_frame(a, b, c);
        } catch (const DomainError&) {
            continue;
        }
        NaturalPoint pa = natural_coords(f, a);
        CHECK(pa.x == Rat(a.q));
        CHECK(pa.y_over_d == 0);
        CHECK(pa.z_level == 0);
        NaturalPoint pb = natural_coords(f, b);
        CHECK(pb.x == Rat(b.q));
        CHECK(pb.y_over_d == 1);
        CHECK(pb.z_level == 0);
        NaturalPoint pc = natural_coords(f, c);
        CHECK(pc.x == Rat(c.q));
        CHECK(pc.y_over_d == f.f_over_d);
        CHECK(pc.z_level == 1);

        IntVec3 w = Int(rng.range(-9, 9)) * a + Int(rng.range(-9, 9)) * b +
                    Int(rng.range(-9, 9)) * c;
        Expansion e = expand_in_basis(w, a, b, c);
        NaturalPoint pw = natural_coords(f, w);
        CHECK(pw.y_over_d == Rat(e.c2) + Rat(e.c3) * f.f_over_d);
        CHECK(pw.z_level == e.c3);
    }
}

TEST_CASE("cylinder membership") {
    Cylinder any{{make_rat(2, 7), make_rat(-1, 3)}, Rat(100), make_rat(1, 9)};
    CHECK(cylinder_contains(any, {0, 0, 0}));

    Cylinder c{{Rat(0), Rat(0)}, Rat(10), make_rat(1, 4)};
    CHECK_FALSE(cylinder_contains(c, {5, 1, 0}));

    // a frame's second vector sits exactly on the cylinder boundary
    IntVec3 w3{5, 2, 1}, w2{2, 1, 0};
    Rat r_sq = (Rat(2) * make_rat(2, 5) - 1) * (Rat(2) * make_rat(2, 5) - 1) +
               (Rat(2) * make_rat(1, 5) - 0) * (Rat(2) * make_rat(1, 5) - 0);
    Cylinder pi{rational_point(w3), Rat(5), r_sq};
    CHECK(cylinder_contains(pi, w2));                      // boundary point
    CHECK(cylinder_contains(pi, w2, make_rat(101, 100)));  // still inside when dilated
}

TEST_CASE("cylinder enumeration") {
    Cylinder exact_multiples{{make_rat(1, 2), make_rat(1, 3)}, Rat(6), Rat(0)};
    std::vector<IntVec3> pts = enumerate_cylinder_points(exact_multiples, Int(100));
    CHECK(pts == std::vector<IntVec3>{{0, 0, 0}, {6, 3, 2}});

    Cylinder axis0{{Rat(0), Rat(0)}, Rat(2), make_rat(1, 4)};
    CHECK(enumerate_cylinder_points(axis0, Int(100)) ==
          std::vector<IntVec3>{{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});

    CHECK_THROWS_AS(enumerate_cylinder_points(axis0, Int(1)), EnumerationLimit);

    // a long thin cylinder at the enumeration scale
    Cylinder lng{{make_rat(3, 7), make_rat(2, 11)}, Rat(10000), make_rat(1, 50)};
    std::vector<IntVec3> lpts = enumerate_cylinder_points(lng, Int(10000));
    CHECK(!lpts.empty());
    for (const IntVec3& p : lpts) CHECK(cylinder_contains(lng, p));
    CHECK(std::binary_search(lpts.begin(), lpts.end(), IntVec3{0, 0, 0}));
    CHECK(std::binary_search(lpts.begin(), lpts.end(), IntVec3{77, 33, 14}));

    // agreement with the membership predicate on random cylinders
    Rng rng;
    for (int i = 0; i < 40; ++i) {
        Cylinder c{{make_rat(rng.range(-30, 30), rng.range(1, 20)),
                    make_rat(rng.range(-30, 30), rng.range(1, 20))},
                   Rat(rng.range(0, 60)),
                   make_rat(rng.range(0, 50), rng.range(1, 10))};
        Rat dil_sq = make_rat(rng.range(100, 140), 100);
        std::vector<IntVec3> listed = enumerate_cylinder_points(c, Int(10000), dil_sq);
        CHECK(std::is_sorted(listed.begin(), listed.end()));
        for (const IntVec3& p : listed) CHECK(cylinder_contains(c, p, dil_sq));
        // spot-check that near-misses are indeed excluded
        for (int j = 0; j < 30; ++j) {
            IntVec3 probe{Int(rng.range(0, 60)), Int(rng.range(-15, 15)),
                          Int(rng.range(-15, 15))};
            bool inside = cylinder_contains(c, probe, dil_sq);
            bool found = std::binary_search(listed.begin(), listed.end(), probe);
            CHECK(inside == found);
        }
    }
}

TEST_CASE("best approximations of a rational point") {
    std::vector<BestApproxEntry> seq = best_approx_oracle(RatVec2{make_rat(1, 2), make_rat(1, 3)},
                                                          Int(10));
    REQUIRE(seq.size() == 3);
    CHECK(seq[0].q == 1);
    CHECK(seq[0].psi_sq == RatInterval(make_rat(13, 36)));
    CHECK(seq[0].tie_p);  // 1/2 is equidistant from 0 and 1
    CHECK(seq[1].q == 2);
    CHECK(seq[1].p1 == 1);
    CHECK(seq[1].p2 == 1);
    CHECK(seq[1].psi_sq == RatInterval(make_rat(1, 9)));
    CHECK(seq[2].q == 6);
    CHECK(seq[2].psi_sq == RatInterval(Rat(0)));

    std::vector<BestApproxEntry> zero = best_approx_oracle(RatVec2{Rat(0), Rat(0)}, Int(5));
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].q == 1);
    CHECK(zero[0].psi_sq == RatInterval(Rat(0)));

    // psi^2 strictly decreases and q strictly increases
    std::vector<BestApproxEntry> gen =
        best_approx_oracle(RatVec2{make_rat(357, 1000), make_rat(419, 993)}, Int(500));
    for (size_t i = 1; i < gen.size(); ++i) {
        CHECK(gen[i].q > gen[i - 1].q);
        CHECK(gen[i].psi_sq.hi < gen[i - 1].psi_sq.lo);
    }
}

TEST_CASE("best approximations from an enclosure") {
    // a tight box around an irrational-ish point matches the exact scan of
    // its center
    RatVec2 center{make_rat(70711, 100000), make_rat(57735, 100000)};
    Rat w = make_rat(1, Int("100000000000000000000"));
    ThetaBox box{RatInterval(center.v1 - w, center.v1 + w),
                 RatInterval(center.v2 - w, center.v2 + w)};
    std::vector<BestApproxEntry> a = best_approx_oracle(box, Int(4000));
    std::vector<BestApproxEntry> b = best_approx_oracle(center, Int(4000));
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].q == b[i].q);
        CHECK(a[i].p1 == b[i].p1);
        CHECK(a[i].p2 == b[i].p2);
        CHECK(a[i].psi_sq.contains(b[i].psi_sq.lo));
        CHECK_FALSE(a[i].tie_p);
    }

    // around an exactly rational point the scan hits an undecidable repeat
    RatVec2 rc{make_rat(1, 2), make_rat(1, 3)};
    ThetaBox rbox{RatInterval(rc.v1 - w, rc.v1 + w), RatInterval(rc.v2 - w, rc.v2 + w)};
    CHECK_THROWS_AS(best_approx_oracle(rbox, Int(12)), InsufficientPrecision);
}
