#include "dyncomp/error.hpp"
#include "dyncomp/plfun.hpp"
#include "helpers.hpp"

#include <doctest.h>

using namespace dyncomp;
using testing::q;

namespace {

PLFunction tent0() { return bump(CircleSet::point(0), CircleSet::open_arc(q(-1, 8), q(1, 8))); }

// Value of f at x by direct linear interpolation over the breakpoint list.
Scalar interpolate(const PLFunction& f, const Scalar& x) {
    const auto& b = f.breakpoints();
    if (b.size() == 1) return b[0].v;
    for (std::size_t i = 0; i < b.size(); ++i) {
        Scalar x0 = b[i].x, x1 = i + 1 < b.size() ? b[i + 1].x : b[0].x + Scalar(1);
        Scalar y = x;
        if (compare(y, x0) < 0) y += Scalar(1);
        if (compare(y, x0) >= 0 && compare(y, x1) < 0)
            return b[i].v + (b[(i + 1) % b.size()].v - b[i].v) * (y - x0) / (x1 - x0);
    }
    FAIL("point not located");
    return Scalar(0);
}

}  // namespace

TEST_CASE("bump shapes") {
    auto t = bump(CircleSet::closed_arc(q(1, 4), q(1, 2)), CircleSet::open_arc(q(1, 8), q(5, 8)));
    CHECK(t(q(1, 4)) == Scalar(1));
    CHECK(t(q(3, 8)) == Scalar(1));
    CHECK(t(q(1, 2)) == Scalar(1));
    CHECK(t(q(1, 8)) == Scalar(0));
    CHECK(t(q(5, 8)) == Scalar(0));
    CHECK(bump(CircleSet::empty(), CircleSet::open_arc(0, q(1, 2))).is_zero());
    auto tent = tent0();
    CHECK(tent(0) == Scalar(1));
    CHECK(tent(q(1, 8)) == Scalar(0));
    CHECK(tent(q(-1, 16)) == tent(q(1, 16)));
    CHECK_THROWS_AS(bump(CircleSet::closed_arc(0, q(1, 2)), CircleSet::open_arc(0, q(1, 2))), Error);
}

TEST_CASE("bump is 1 on F and supported in W on random inputs") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        CircleSet F = testing::random_set(rng, 3).closure();
        CircleSet W = F.is_empty() ? testing::random_set(rng, 2).interior() : F;
        // Widen F into an open neighbourhood with room to spare.
        if (!F.is_empty()) {
            std::vector<CircleSet> parts;
            for (const auto& a : F.components())
                parts.push_back(CircleSet::open_arc(a.lo - q(1, 200), a.hi + q(1, 200)));
            W = unite_all(parts);
        }
        if (W.is_empty()) continue;
        auto f = bump(F, W);
        auto sr = support(f);
        CHECK(sr.support.subset_of(W));
        CHECK(F.subset_of(sr.one_set));
        auto e = global_extrema(f);
        CHECK(e.min.sign() >= 0);
        CHECK(compare(e.max, Scalar(1)) <= 0);
    }
}

TEST_CASE("pointwise operations agree with direct interpolation") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 150; ++t) {
        auto f = testing::random_pl(rng), g = testing::random_pl(rng);
        auto mn = pl_min(f, g), mx = pl_max(f, g), sm = pl_add(f, g), df = pl_sub(f, g);
        auto sc = pl_scale(f, q(-3, 2));
        for (long i = 0; i < 96; ++i) {
            Scalar x = q(i, 96) + q(1, 1000);
            Scalar fx = interpolate(f, x), gx = interpolate(g, x);
            CHECK(f(x) == fx);
            CHECK(mn(x) == min(fx, gx));
            CHECK(mx(x) == max(fx, gx));
            CHECK(sm(x) == fx + gx);
            CHECK(df(x) == fx - gx);
            CHECK(sc(x) == fx * q(-3, 2));
        }
        CHECK(pl_min(f, f) == f);
        CHECK(pl_add(f, PLFunction()) == f);
    }
}

TEST_CASE("sum of many agrees with pairwise sums") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 30; ++t) {
        std::vector<PLFunction> fs;
        PLFunction acc;
        for (int k = 0; k < 9; ++k) {
            fs.push_back(testing::random_pl(rng, 5, 32));
            acc = pl_add(acc, fs.back());
        }
        CHECK(pl_sum_all(fs) == acc);
    }
}

TEST_CASE("translation and supports commute") {
    System s = testing::golden_rotation();
    auto tent = tent0();
    CHECK(translate_fn(s, tent, 0) == tent);
    auto moved = translate_fn(s, tent, 1);
    CHECK(moved(s.theta()) == Scalar(1));
    CHECK(moved == bump(CircleSet::point(s.theta()), CircleSet::open_arc(s.theta() - q(1, 8), s.theta() + q(1, 8))));
    auto b = bump(CircleSet::closed_arc(q(1, 5), q(3, 10)), CircleSet::open_arc(q(1, 10), q(2, 5)));
    CHECK(support_set(translate_fn(s, b, 7)) == translate_region(s, support_set(b), 7).circle());
}

TEST_CASE("Birkhoff sums agree with direct evaluation") {
    System s = testing::golden_rotation();
    auto g = bump(CircleSet::closed_arc(q(1, 5), q(3, 10)), CircleSet::open_arc(q(1, 10), q(2, 5)));
    CHECK(birkhoff_sum(s, g, 1) == g);
    CHECK(birkhoff_sum(s, PLFunction::constant(1), 5) == PLFunction::constant(5));
    std::mt19937_64 rng(14);
    for (long N : {2L, 7L, 30L}) {
        auto S = birkhoff_sum(s, g, N);
        for (int i = 0; i < 40; ++i) {
            Scalar x = testing::field_point(rng);
            Scalar direct(0);
            for (long j = 0; j < N; ++j) direct += g((x + Scalar(j) * s.theta()).frac());
            CHECK(S(x) == direct);
        }
    }
    setenv("DYNCOMP_BP_CAP", "10", 1);
    CHECK_THROWS_AS(birkhoff_sum(s, g, 100), Error);
    unsetenv("DYNCOMP_BP_CAP");
}

TEST_CASE("extrema and integrals") {
    CHECK(global_extrema(PLFunction::constant(q(2, 3))).min == q(2, 3));
    auto e = global_extrema(tent0());
    CHECK(e.min == Scalar(0));
    CHECK(e.max == Scalar(1));
    CHECK(integral(PLFunction::constant(1)) == Scalar(1));
    CHECK(integral(tent0()) == q(1, 16));
    std::mt19937_64 rng(15);
    for (int t = 0; t < 60; ++t) {
        auto f = testing::random_pl(rng);
        auto g = global_extrema(f);
        CHECK(f(g.argmin) == g.min);
        CircleSet R = testing::random_set(rng, 2).closure();
        if (R.is_empty()) continue;
        auto r = extrema_on(f, R);
        CHECK(compare(r.min, g.min) >= 0);
        CHECK(compare(r.max, g.max) <= 0);
        for (const auto& x : testing::probes({R}, 64)) {
            if (!R.contains(x)) continue;
            CHECK(compare(f(x), r.min) >= 0);
            CHECK(compare(f(x), r.max) <= 0);
        }
    }
}

TEST_CASE("partition of unity by min-cascade") {
    CircleSet C = CircleSet::closed_arc(0, q(1, 2));
    std::vector<std::pair<CircleSet, CircleSet>> pairs = {
        {CircleSet::closed_arc(0, q(1, 3)), CircleSet::open_arc(q(-1, 10), q(2, 5))},
        {CircleSet::closed_arc(q(1, 4), q(1, 2)), CircleSet::open_arc(q(1, 5), q(3, 5))}};
    auto fs = partition_of_unity(pairs, C);
    auto sum = pl_sum_all(fs);
    auto e = extrema_on(sum, C);
    CHECK(e.min == Scalar(1));
    CHECK(e.max == Scalar(1));
    for (std::size_t j = 0; j < fs.size(); ++j) {
        CHECK(support_set(fs[j]).subset_of(pairs[j].second));
        CHECK(global_extrema(fs[j]).min.sign() >= 0);
    }
    CHECK_THROWS_AS(partition_of_unity(pairs, CircleSet::closed_arc(0, q(3, 4))), Error);
    auto empty = partition_of_unity(pairs, CircleSet::empty());
    CHECK(empty.size() == 2);
}

TEST_CASE("min-cascade sums to one wherever the bumps cover") {
    std::mt19937_64 rng(16);
    for (int t = 0; t < 40; ++t) {
        std::vector<PLFunction> g;
        std::vector<CircleSet> ones;
        for (int k = 0; k < 5; ++k) {
            Scalar c = testing::grid_point(rng, 40);
            auto F = CircleSet::closed_arc(c, c + q(1, 20));
            g.push_back(bump(F, CircleSet::open_arc(c - q(1, 40), c + q(3, 40))));
            ones.push_back(F);
        }
        auto f = min_cascade(g);
        auto sum = pl_sum_all(f);
        auto cover = unite_all(ones);
        auto e = extrema_on(sum, cover);
        CHECK(e.min == Scalar(1));
        CHECK(compare(global_extrema(sum).max, Scalar(1)) <= 0);
        for (std::size_t j = 0; j < f.size(); ++j) CHECK(support_set(f[j]).subset_of(support_set(g[j])));
    }
}
