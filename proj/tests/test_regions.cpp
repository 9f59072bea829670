#include "dyncomp/error.hpp"
#include "dyncomp/regions.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace dyncomp;
using testing::q;

TEST_CASE("circle set algebra examples") {
    auto u = CircleSet::closed_arc(0, q(1, 4)).unite(CircleSet::closed_arc(q(1, 4), q(1, 2)));
    CHECK(u == CircleSet::closed_arc(0, q(1, 2)));
    auto i = CircleSet::arc(0, q(1, 2), true, false).intersect(CircleSet::open_arc(q(1, 4), q(3, 4)));
    CHECK(i == CircleSet::open_arc(q(1, 4), q(1, 2)));
    CHECK(CircleSet::open_arc(q(1, 3), q(2, 3)).closure() == CircleSet::closed_arc(q(1, 3), q(2, 3)));
    CHECK(CircleSet::arc(0, q(1, 4), true, false).unite(CircleSet::arc(q(1, 4), q(1, 2), true, false)) ==
          CircleSet::arc(0, q(1, 2), true, false));
}

TEST_CASE("circle set algebra agrees with pointwise membership") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 200; ++t) {
        CircleSet a = testing::random_set(rng, 4), b = testing::random_set(rng, 4);
        CircleSet un = a.unite(b), in = a.intersect(b), mi = a.minus(b), co = a.complement();
        for (const auto& x : testing::probes({a, b})) {
            bool ia = a.contains(x), ib = b.contains(x);
            CHECK(un.contains(x) == (ia || ib));
            CHECK(in.contains(x) == (ia && ib));
            CHECK(mi.contains(x) == (ia && !ib));
            CHECK(co.contains(x) == !ia);
        }
        CHECK(co.complement() == a);
        CHECK(a.subset_of(un));
        CHECK(in.subset_of(a));
        CHECK(mi.disjoint(b));
        // Measure is additive over disjoint pieces.
        CHECK(un.measure() == a.measure() + b.measure() - in.measure());
        CHECK(a.closure().is_closed());
        CHECK(a.interior().is_open());
        CHECK(a.interior().subset_of(a));
        CHECK(a.subset_of(a.closure()));
    }
}

TEST_CASE("translation preserves measure and composes") {
    System s = testing::golden_rotation();
    std::mt19937_64 rng(8);
    for (int t = 0; t < 50; ++t) {
        CircleSet a = testing::random_set(rng, 3);
        long n = testing::uniform(rng, -20, 20);
        Region r = translate_region(s, a, n);
        CHECK(measure(s, r) == a.measure());
        CHECK(translate_region(s, r, -n) == Region(a));
        for (const auto& x : testing::probes({a}, 16))
            CHECK(r.circle().contains((x + Scalar(n) * s.theta()).frac()) == a.contains(x));
    }
}

TEST_CASE("translation example wraps") {
    System s = testing::golden_rotation();
    Scalar th = testing::golden();
    Region r = translate_region(s, CircleSet::arc(0, q(1, 4), true, false), 1);
    CHECK(r == Region(CircleSet::arc(th, th + q(1, 4), true, false)));
    CHECK(r.circle().contains(Scalar(0)) == false);
    CHECK(r.circle().contains(th + q(1, 100)));
    CHECK(!r.circle().contains(th + q(1, 4)));
}

TEST_CASE("boundary and measure examples") {
    System s = testing::golden_rotation();
    auto b = boundary(CircleSet::open_arc(q(1, 3), q(2, 3)));
    REQUIRE(b.points.size() == 2);
    CHECK(b.points[0] == q(1, 3));
    CHECK(boundary(CircleSet::full()).is_empty);
    CHECK(measure(s, CircleSet::arc(q(1, 4), q(1, 2), true, false)) == q(1, 4));
    CHECK(measure(s, CircleSet::arc(0, testing::golden(), true, false)) == testing::golden());

    System o = System::odometer({2, 2, 2});
    CylSet c = CylSet::of(8, {odometer_index(o, "000"), odometer_index(o, "101")});
    CHECK(measure(o, c) == q(1, 4));
    CHECK(boundary(c).is_empty);
    System o2 = System::odometer({2, 2});
    CHECK(translate_region(o2, CylSet::of(4, {3}), 1) == Region(CylSet::of(4, {0})));
}

TEST_CASE("measure gap and approximations") {
    System s = testing::golden_rotation();
    CHECK(measure_gap(s, CircleSet::empty(), CircleSet::open_arc(0, q(1, 2))) == q(1, 2));
    CHECK(measure_gap(s, CircleSet::closed_arc(0, q(1, 5)), CircleSet::open_arc(q(3, 10), q(6, 10))) == q(1, 10));
    CHECK(measure_gap(s, CircleSet::closed_arc(0, q(1, 2)), CircleSet::open_arc(0, q(1, 2))) == Scalar(0));

    CHECK(small_nbhd(s, CircleSet::point(0), q(1, 10)) == Region(CircleSet::open_arc(q(-1, 40), q(1, 40))));
    auto two = small_nbhd(s, CircleSet::points({0, q(1, 2)}), q(1, 10));
    CHECK(measure(s, two) == q(1, 20));
    CHECK(compare(measure(s, small_nbhd(s, CircleSet::empty(), q(1, 10))), q(1, 10)) < 0);

    CHECK(inner_approx(s, CircleSet::open_arc(0, q(1, 2)), q(1, 8)) ==
          Region(CircleSet::closed_arc(q(1, 32), q(15, 32))));
    CHECK(inner_approx(s, CircleSet::full(), q(1, 8)) == Region(CircleSet::full()));
    CHECK(inner_approx(s, CircleSet::open_arc(0, q(1, 10)), Scalar(1)) ==
          Region(CircleSet::closed_arc(q(1, 80), q(7, 80))));
    CHECK(outer_approx(s, CircleSet::closed_arc(q(1, 4), q(1, 2)), q(1, 8)) ==
          Region(CircleSet::open_arc(q(7, 32), q(17, 32))));
    CHECK(outer_approx(s, CircleSet::empty(), q(1, 8)).is_empty());
    CHECK(outer_approx(s, CircleSet::full(), q(1, 8)) == Region(CircleSet::full()));
}

TEST_CASE("approximations meet their measure bounds on random inputs") {
    System s = testing::golden_rotation();
    std::mt19937_64 rng(9);
    for (int t = 0; t < 100; ++t) {
        CircleSet u = testing::random_set(rng, 4).interior();
        CircleSet f = testing::random_set(rng, 4).closure();
        Scalar eps = q(1, testing::uniform(rng, 2, 200));
        if (u.is_empty()) {
            CHECK_THROWS_AS(inner_approx(s, u, eps), Error);
            continue;
        }
        Region k = inner_approx(s, u, eps);
        CHECK(k.circle().is_closed());
        CHECK(k.circle().subset_of(u));
        CHECK(compare(u.measure() - k.circle().measure(), eps) < 0);
        Region e = outer_approx(s, f, eps);
        CHECK(e.circle().is_open());
        CHECK(f.subset_of(e.circle()));
        CHECK(compare(e.circle().measure() - f.measure(), eps) < 0);
    }
}

TEST_CASE("torus sets") {
    auto box = TorusSet::box({CircleSet::closed_arc(0, q(1, 2)), CircleSet::open_arc(q(1, 4), q(3, 4))});
    CHECK(box.measure() == q(1, 4));
    CHECK(box.contains({q(1, 4), q(1, 2)}));
    CHECK(!box.contains({q(1, 4), q(1, 4)}));
    CHECK(box.complement().measure() == q(3, 4));
    CHECK(box.closure().minus(box.interior()) == box.boundary());
    std::mt19937_64 rng(10);
    for (int t = 0; t < 40; ++t) {
        auto a = TorusSet::box({testing::random_set(rng, 2, 16), testing::random_set(rng, 2, 16)});
        auto b = TorusSet::box({testing::random_set(rng, 2, 16), testing::random_set(rng, 2, 16)});
        auto un = a.unite(b), in = a.intersect(b);
        for (long i = 0; i < 32; ++i)
            for (long j = 0; j < 32; ++j) {
                std::vector<Scalar> x = {q(i, 32), q(j, 32)};
                CHECK(un.contains(x) == (a.contains(x) || b.contains(x)));
                CHECK(in.contains(x) == (a.contains(x) && b.contains(x)));
            }
        CHECK(un.measure() == a.measure() + b.measure() - in.measure());
    }
}

TEST_CASE("cylinder sets") {
    CylSet a = CylSet::of(8, {0, 1, 5}), b = CylSet::of(8, {1, 2});
    CHECK(a.unite(b).count() == 4);
    CHECK(a.intersect(b) == CylSet::of(8, {1}));
    CHECK(a.minus(b) == CylSet::of(8, {0, 5}));
    CHECK(a.complement().count() == 5);
    CHECK(a.translate(3) == CylSet::of(8, {3, 4, 0}));
}

TEST_CASE("mixed ambients are rejected") {
    CHECK_THROWS_AS(region_algebra(SetOp::Union, CircleSet::full(), CylSet::full(4)), Error);
    System s = testing::golden_rotation();
    CHECK_THROWS_AS(check_ambient(s, CylSet::full(4)), Error);
}
