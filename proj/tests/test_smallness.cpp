#include "dyncomp/error.hpp"
#include "dyncomp/smallness.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <set>

using namespace dyncomp;
using testing::q;

TEST_CASE("distinct sums") {
    CHECK(distinct_sums_card({0, 1, 2}, {0, 5}) == 6);
    CHECK(distinct_sums_card({0, 1}, {0, 1}) == 3);
    CHECK(distinct_sums_card({0}, {0, 1}) == 2);
    CHECK_THROWS_AS(distinct_sums_card({0, 0}, {0, 1}), Error);
    CHECK_THROWS_AS(distinct_sums_card({0, 1}, {2, 2}), Error);
    std::mt19937_64 rng(31);
    for (int t = 0; t < 1000; ++t) {
        std::set<long> ds;
        long m = testing::uniform(rng, 0, 6);
        while (static_cast<long>(ds.size()) < m + 1) ds.insert(testing::uniform(rng, -50, 50));
        long n1 = testing::uniform(rng, -50, 50), n2 = n1 + testing::uniform(rng, 1, 50);
        std::vector<long> d(ds.begin(), ds.end());
        std::set<long> sums;
        for (long x : d) {
            sums.insert(x + n1);
            sums.insert(x + n2);
        }
        long c = distinct_sums_card(d, {n1, n2});
        CHECK(c == static_cast<long>(sums.size()));
        CHECK(c >= m + 2);
    }
}

TEST_CASE("smallness constants") {
    System s = testing::golden_rotation();
    Scalar th = testing::golden();
    auto one = smallness_constant(s, CircleSet::point(q(1, 5)));
    CHECK(one.constant == 1);
    CHECK(one.verdict == Verdict::Proven);
    auto two = smallness_constant(s, CircleSet::points({q(1, 5), (q(1, 5) + th).frac()}));
    CHECK(two.constant == 2);
    CHECK(two.witness == std::vector<long>{0, 1});
    CHECK(smallness_constant(s, CircleSet::points({0, q(1, 3)})).constant == 1);
    CHECK(union_smallness_bound({one}) == 1);
    CHECK(union_smallness_bound({one, one}) == 2);
    SmallnessCertificate c2, c3;
    c2.constant = 2;
    c3.constant = 3;
    CHECK(union_smallness_bound({c2, c3}) == 5);
}

TEST_CASE("exact constants dominate the bounded search") {
    System s = testing::golden_rotation();
    Scalar th = testing::golden();
    std::mt19937_64 rng(32);
    for (int t = 0; t < 40; ++t) {
        std::vector<Scalar> pts;
        Scalar base = testing::field_point(rng);
        for (int k = 0; k < 4; ++k) {
            Scalar p = testing::uniform(rng, 0, 1) ? (base + Scalar(testing::uniform(rng, -6, 6)) * th).frac()
                                                    : testing::field_point(rng);
            if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
        }
        auto cert = smallness_constant(s, CircleSet::points(pts));
        long found = smallness_by_search(s, pts, 12);
        CHECK(cert.constant == found);
        CHECK(translates_meet(s, CircleSet::points(pts), cert.witness));
    }
}

TEST_CASE("union bound is never violated") {
    System s = testing::golden_rotation();
    Scalar th = testing::golden();
    std::mt19937_64 rng(33);
    for (int t = 0; t < 50; ++t) {
        Scalar a = testing::field_point(rng);
        std::vector<Scalar> p1 = {a, (a + th).frac()};
        std::vector<Scalar> p2 = {(a + Scalar(testing::uniform(rng, 2, 5)) * th).frac(), testing::field_point(rng)};
        std::vector<Scalar> all = p1;
        for (const auto& p : p2)
            if (std::find(all.begin(), all.end(), p) == all.end()) all.push_back(p);
        auto c1 = smallness_constant(s, CircleSet::points(p1));
        auto c2 = smallness_constant(s, CircleSet::points(p2));
        auto cu = smallness_constant(s, CircleSet::points(all));
        CHECK(cu.constant <= union_smallness_bound({c1, c2}));
    }
}

TEST_CASE("thin covers") {
    System s = testing::golden_rotation();
    auto U = CircleSet::open_arc(0, q(1, 2));
    auto c = thin_cover(s, CircleSet::point(0), U, 100);
    REQUIRE(c.shifts.size() == 1);
    // theta > 1/2, so the nearest visit to (0, 1/2) is 1 - theta.
    CHECK(c.shifts[0] == -1);
    CHECK(verify_thin_cover(s, CircleSet::point(0), U, c));
    CHECK(thin_cover(s, CircleSet::empty(), U, 10).opens.empty());
    auto V = CircleSet::open_arc(q(7, 10), q(8, 10));
    auto c2 = thin_cover(s, CircleSet::points({0, q(1, 2)}), V, 1000);
    CHECK(c2.opens.size() == 2);
    CHECK(verify_thin_cover(s, CircleSet::points({0, q(1, 2)}), V, c2));
    auto closed = closed_thin_cover(s, CircleSet::point(0), U, 100);
    REQUIRE(closed.size() == 1);
    CHECK(translate_region(s, closed[0].first, closed[0].second).circle().subset_of(U));
    CHECK(closed_thin_cover(s, CircleSet::empty(), U, 10).empty());
}

TEST_CASE("leftover covers") {
    System s = testing::golden_rotation();
    auto c = leftover_cover(s, CircleSet::point(0), CircleSet::open_arc(0, q(1, 2)), q(1, 20));
    CHECK(c.W.size() == 1);
    CHECK(check_leftover_cover(s, CircleSet::point(0), CircleSet::open_arc(0, q(1, 2)), c).ok());
    auto e = leftover_cover(s, CircleSet::empty(), CircleSet::open_arc(0, q(1, 2)), q(1, 20));
    CHECK(e.W.empty());
    auto F = CircleSet::points({0, q(1, 2)});
    auto U = CircleSet::open_arc(0, q(1, 3));
    auto c2 = leftover_cover(s, F, U, q(1, 10));
    CHECK(c2.W.size() == 2);
    auto rep = check_leftover_cover(s, F, U, c2);
    CHECK(rep.covers);
    CHECK(rep.nested);
    CHECK(rep.partition);
    CHECK(rep.supports);
    CHECK(rep.disjoint);
}

TEST_CASE("leftover covers on random instances") {
    System s = testing::golden_rotation();
    std::mt19937_64 rng(34);
    for (int t = 0; t < 10; ++t) {
        std::vector<Scalar> pts;
        for (int k = 0; k < 5; ++k) pts.push_back(testing::field_point(rng));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        Scalar lo = testing::grid_point(rng, 20);
        auto U = CircleSet::open_arc(lo, lo + q(testing::uniform(rng, 1, 6), 20));
        Scalar eps = q(1, testing::uniform(rng, 5, 100));
        auto cover = leftover_cover(s, CircleSet::points(pts), U, eps);
        CHECK(check_leftover_cover(s, CircleSet::points(pts), U, cover).ok());
    }
}

TEST_CASE("separation and point neighbourhoods") {
    System s = testing::golden_rotation();
    auto sep = tsbp_separate(s, CircleSet::closed_arc(0, q(1, 4)), CircleSet::closed_arc(q(1, 2), q(3, 4)));
    CHECK(sep.U == Region(CircleSet::open_arc(q(-1, 16), q(5, 16))));
    CHECK(sep.V == Region(CircleSet::open_arc(q(7, 16), q(13, 16))));
    CHECK(sep.U.circle().closure().disjoint(sep.V.circle().closure()));
    CHECK_THROWS_AS(tsbp_separate(s, CircleSet::empty(), CircleSet::full()), Error);

    auto p = tsbp_point_nbhd(s, Point::circle(0), CircleSet::open_arc(q(-1, 4), q(1, 4)));
    CHECK(p.V == Region(CircleSet::open_arc(q(-1, 8), q(1, 8))));
    CHECK(p.cert.constant <= 2);
    auto p2 = tsbp_point_nbhd(s, Point::circle(q(1, 8)), CircleSet::open_arc(0, q(1, 4)));
    CHECK(p2.V == Region(CircleSet::open_arc(q(1, 16), q(3, 16))));
    auto p3 = tsbp_point_nbhd(s, Point::circle(0), CircleSet::full());
    CHECK(p3.V.circle().contains(Scalar(0)));
}

TEST_CASE("separations of random pairs") {
    System s = testing::golden_rotation();
    std::mt19937_64 rng(35);
    for (int t = 0; t < 30; ++t) {
        CircleSet F = testing::random_set(rng, 3).closure();
        CircleSet K = testing::random_set(rng, 3).closure().minus(F.interior()).closure();
        if (!F.disjoint(K) || F.is_empty() || K.is_empty()) continue;
        auto sep = tsbp_separate(s, F, K);
        CHECK(F.subset_of(sep.U.circle()));
        CHECK(K.subset_of(sep.V.circle()));
        CHECK(sep.U.circle().closure().disjoint(sep.V.circle().closure()));
        auto pts = boundary(sep.U).points;
        CHECK(smallness_constant(s, CircleSet::points(pts)).constant <= sep.cert.constant);
    }
}

TEST_CASE("regular approximations") {
    System s = testing::golden_rotation();
    auto in = regular_inner_approx(s, CircleSet::open_arc(0, q(1, 2)), q(1, 8));
    CHECK(in.V == Region(CircleSet::open_arc(q(1, 32), q(15, 32))));
    auto full = regular_inner_approx(s, CircleSet::full(), q(1, 8));
    CHECK(compare(Scalar(1) - full.V.circle().closure().measure(), q(1, 8)) < 0);
    auto out = regular_outer_approx(s, CircleSet::closed_arc(q(1, 4), q(1, 2)), CircleSet::open_arc(0, 1), q(1, 8));
    CHECK(out.V == Region(CircleSet::open_arc(q(7, 32), q(17, 32))));
    auto none = regular_outer_approx(s, CircleSet::empty(), CircleSet::open_arc(0, q(1, 2)), q(1, 8));
    CHECK(compare(measure(s, none.V), q(1, 8)) < 0);
    CHECK(none.V.circle().subset_of(CircleSet::open_arc(0, q(1, 2))));

    std::mt19937_64 rng(36);
    for (int t = 0; t < 100; ++t) {
        CircleSet U = testing::random_set(rng, 3).interior();
        if (U.is_empty()) continue;
        Scalar eps = q(1, testing::uniform(rng, 2, 100));
        auto r = regular_inner_approx(s, U, eps);
        CircleSet Vbar = r.V.circle().closure();
        CHECK(Vbar.subset_of(U));
        CHECK(compare(U.measure() - Vbar.measure(), eps) < 0);
        CHECK(r.cert.constant <= 2 * static_cast<long>(std::max<std::size_t>(1, r.V.circle().piece_count())));
        CircleSet F = r.V.circle().closure();
        auto o = regular_outer_approx(s, F, U, eps);
        CHECK(F.subset_of(o.V.circle()));
        CHECK(o.V.circle().closure().subset_of(U));
        CHECK(compare(o.V.circle().measure() - F.measure(), eps) < 0);
    }
}
