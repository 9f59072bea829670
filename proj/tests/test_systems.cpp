#include "dyncomp/error.hpp"
#include "dyncomp/systems.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace dyncomp;
using testing::q;

TEST_CASE("rotation orbit") {
    System s = testing::golden_rotation();
    CHECK(apply(s, Point::circle(0), 0) == Point::circle(0));
    CHECK(apply(s, Point::circle(0), 1).coords[0] == testing::golden());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 50; ++i) {
        Scalar x = testing::field_point(rng);
        long n = testing::uniform(rng, -30, 30), m = testing::uniform(rng, -30, 30);
        Point p = Point::circle(x);
        CHECK(apply(s, apply(s, p, n), m) == apply(s, p, n + m));
        CHECK(apply(s, p, n).coords[0] == (x + Scalar(n) * s.theta()).frac());
    }
}

TEST_CASE("rational and degenerate angles are rejected") {
    CHECK_THROWS_AS(System::rotation(q(1, 3)), Error);
    CHECK_THROWS_AS(System::odometer({}), Error);
    CHECK_THROWS_AS(System::odometer({2, 1}), Error);
}

TEST_CASE("odometer adding machine") {
    System s = System::odometer({2, 2, 2});
    CHECK(s.K() == 8);
    std::int64_t w111 = odometer_index(s, "111");
    std::int64_t w000 = odometer_index(s, "000");
    CHECK(apply(s, Point::cylinder(w111), 1).index == w000);
    // Carrying: 100 (first digit least significant) plus one is 010.
    CHECK(apply(s, Point::cylinder(odometer_index(s, "100")), 1).index == odometer_index(s, "010"));
    for (std::int64_t i = 0; i < 8; ++i) {
        CHECK(odometer_index(s, odometer_word(s, i)) == i);
        CHECK(apply(s, Point::cylinder(i), 8).index == i);
    }
}

TEST_CASE("odometer carries agree with digit arithmetic") {
    System s = System::odometer({3, 2, 5});
    for (std::int64_t i = 0; i < s.K(); ++i) {
        auto w = odometer_word(s, i);
        // Add one to the least significant digit and carry.
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (++w[k] < s.bases()[k]) break;
            w[k] = 0;
        }
        CHECK(apply(s, Point::cylinder(i), 1).index == odometer_index(s, w));
    }
}

TEST_CASE("minimal orbit gap") {
    System s = testing::golden_rotation();
    Scalar th = testing::golden();
    CHECK(min_orbit_gap(s, 1) == Scalar(1) - th);
    CHECK(min_orbit_gap(s, 2) == Scalar(2) * th - Scalar(1));
    Scalar prev = min_orbit_gap(s, 1);
    for (long N = 2; N < 40; ++N) {
        Scalar g = min_orbit_gap(s, N);
        CHECK(compare(g, prev) <= 0);
        prev = g;
    }
    CHECK(circle_norm(q(3, 4)) == q(1, 4));
}

TEST_CASE("system echo") {
    CHECK(testing::golden_rotation().echo() == "system rotation\nD 5\ntheta -1 1 2\n");
    CHECK(System::odometer({2, 2}).echo() == "system odometer\nbases 2 2\nlevel 2\n");
}
