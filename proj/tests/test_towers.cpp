#include "dyncomp/error.hpp"
#include "dyncomp/towers.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace dyncomp;
using testing::q;

namespace {

// First return time of x to Y by stepping the orbit.
long return_time(const System& s, const CircleSet& Y, const Scalar& x) {
    Scalar y = x;
    for (long r = 1; r < 100000; ++r) {
        y = (y + s.theta()).frac();
        if (Y.contains(y)) return r;
    }
    return -1;
}

}  // namespace

TEST_CASE("golden tower over [0, theta]") {
    System s = testing::golden_rotation();
    Scalar th = testing::golden();
    auto cells = first_return(s, CircleSet::closed_arc(0, th));
    REQUIRE(cells.size() == 2);
    auto tower = build_tower(s, CircleSet::closed_arc(0, th));
    REQUIRE(tower.columns.size() == 2);
    bool saw1 = false, saw2 = false;
    for (const auto& c : tower.columns) {
        if (c.height == 1) {
            saw1 = true;
            CHECK(c.base == Region(CircleSet::closed_arc(Scalar(1) - th, th)));
        }
        if (c.height == 2) {
            saw2 = true;
            CHECK(c.base == Region(CircleSet::closed_arc(0, Scalar(1) - th)));
        }
    }
    CHECK(saw1);
    CHECK(saw2);
    CHECK(kac_sum(tower) == Scalar(1));
    CHECK(check_tower(tower).ok());
    CHECK(tower.level_count() == 3);
}

TEST_CASE("return times agree with orbit stepping") {
    System s = testing::golden_rotation();
    std::mt19937_64 rng(21);
    for (int t = 0; t < 20; ++t) {
        Scalar lo = testing::grid_point(rng, 50);
        Scalar len = q(testing::uniform(rng, 1, 15), 50);
        CircleSet Y = CircleSet::closed_arc(lo, lo + len);
        auto tower = build_tower(s, Y);
        CHECK(check_tower(tower).ok());
        for (const auto& c : tower.columns) {
            if (c.empty_interior) continue;
            auto comps = c.base.circle().components();
            REQUIRE(!comps.empty());
            Scalar mid = ((comps[0].lo + comps[0].hi) / Scalar(2)).frac();
            CHECK(return_time(s, Y, mid) == c.height);
        }
    }
}

TEST_CASE("trivial and odometer towers") {
    System s = testing::golden_rotation();
    auto whole = build_tower(s, CircleSet::full());
    REQUIRE(whole.columns.size() == 1);
    CHECK(whole.columns[0].height == 1);
    System o = System::odometer({2, 2, 2});
    auto cells = first_return(o, CylSet::of(8, {0}));
    REQUIRE(cells.size() == 1);
    CHECK(cells[0].time == 8);
    System o2 = System::odometer({2, 2});
    auto t2 = build_tower(o2, CylSet::of(4, {0}));
    REQUIRE(t2.columns.size() == 1);
    CHECK(t2.columns[0].height == 4);
    CHECK(check_tower(t2).ok());
}

TEST_CASE("refined levels lie in one partition element") {
    System s = testing::golden_rotation();
    auto tower = build_tower(s, CircleSet::closed_arc(0, testing::golden()));
    std::vector<Region> halves = {CircleSet::arc(0, q(1, 2), true, false), CircleSet::arc(q(1, 2), 1, true, false)};
    auto r = refine_tower(tower, halves);
    CHECK(check_tower(r).ok());
    for (std::size_t k = 0; k < r.columns.size(); ++k)
        for (long j = 0; j < r.columns[k].height; ++j) {
            CircleSet open = r.level(k, j).circle().interior();
            int inside = 0;
            for (const auto& h : halves) inside += open.subset_of(h.circle()) ? 1 : 0;
            CHECK(inside == (open.is_empty() ? 2 : 1));
        }
    auto same = refine_tower(tower, {CircleSet::full()});
    CHECK(kac_sum(same) == Scalar(1));
    CHECK_THROWS_AS(refine_tower(tower, {CircleSet::closed_arc(0, q(1, 2))}), Error);
    CHECK_THROWS_AS(refine_tower(tower, {CircleSet::closed_arc(0, q(3, 4)), CircleSet::closed_arc(q(1, 2), 1)}),
                    Error);
}

TEST_CASE("refinement over random partitions") {
    System s = testing::golden_rotation();
    std::mt19937_64 rng(22);
    auto tower = build_tower(s, CircleSet::closed_arc(0, q(1, 3)));
    for (int t = 0; t < 10; ++t) {
        std::vector<Scalar> cuts;
        int n = static_cast<int>(testing::uniform(rng, 2, 4));
        while (static_cast<int>(cuts.size()) < n) {
            Scalar c = testing::grid_point(rng, 40);
            if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<Region> parts;
        for (std::size_t i = 0; i < cuts.size(); ++i) {
            Scalar hi = i + 1 < cuts.size() ? cuts[i + 1] : cuts[0] + Scalar(1);
            parts.push_back(CircleSet::arc(cuts[i], hi, true, false));
        }
        auto r = refine_tower(tower, parts);
        CHECK(check_tower(r).ok());
        for (std::size_t k = 0; k < r.columns.size(); ++k)
            for (long j = 0; j < r.columns[k].height; ++j) {
                CircleSet open = r.level(k, j).circle().interior();
                if (open.is_empty()) continue;
                int inside = 0;
                for (const auto& p : parts) inside += open.subset_of(p.circle()) ? 1 : 0;
                CHECK(inside == 1);
            }
    }
}

TEST_CASE("disjoint base") {
    System s = testing::golden_rotation();
    Scalar th = testing::golden();
    auto Y1 = disjoint_base(s, 1, Point::circle(0));
    CHECK(measure(s, Y1) == (Scalar(1) - th) / Scalar(3));
    CHECK(Y1.circle().contains(Scalar(0)));
    auto Y2 = disjoint_base(s, 2, Point::circle(0));
    CHECK(measure(s, Y2) == (Scalar(2) * th - Scalar(1)) / Scalar(3));
    for (long N : {1L, 5L, 40L}) {
        auto Y = disjoint_base(s, N, Point::circle(q(1, 7)));
        for (long i = 0; i <= N; ++i)
            for (long j = i + 1; j <= N; ++j)
                CHECK(translate_region(s, Y, i).circle().disjoint(translate_region(s, Y, j).circle()));
    }
}
