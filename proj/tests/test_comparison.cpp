#include "dyncomp/comparison.hpp"
#include "dyncomp/error.hpp"
#include "helpers.hpp"

#include <doctest.h>

#include <functional>

using namespace dyncomp;
using testing::q;

namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

}  // namespace

TEST_CASE("Birkhoff certificate") {
    System s = testing::golden_rotation();
    auto F = CircleSet::closed_arc(0, q(1, 10));
    auto E = CircleSet::open_arc(q(3, 10), q(6, 10));
    auto c = birkhoff_certificate(s, F, E);
    CHECK(c.sigma == integral(c.g) / Scalar(2));
    CHECK(compare(c.m0, c.sigma) > 0);
    CHECK(global_extrema(birkhoff_sum(s, c.g, c.N0)).min / Scalar(c.N0) == c.m0);
    for (long N : {c.N1, c.N1 + 1, 2 * c.N1}) CHECK(birkhoff_spot_check(s, c, N));
    // The functions separate F and E.
    CHECK(F.subset_of(support(c.g0).one_set));
    CHECK(support_set(c.g1).subset_of(E));
    auto e = global_extrema(c.g);
    CHECK(compare(e.min, Scalar(-1)) >= 0);
    CHECK(compare(e.max, Scalar(1)) <= 0);

    auto c0 = birkhoff_certificate(s, CircleSet::empty(), CircleSet::open_arc(0, q(1, 2)));
    CHECK(c0.g == c0.g1);
    CHECK(compare(c0.m0, c0.sigma) > 0);
    CHECK(kind_of([&] { birkhoff_certificate(s, CircleSet::closed_arc(0, q(1, 4)), CircleSet::open_arc(q(1, 2), q(3, 4))); }) ==
          ErrorKind::GapNonpositive);
    CHECK(kind_of([&] { birkhoff_certificate(s, CircleSet::closed_arc(0, q(1, 2)), CircleSet::open_arc(0, q(1, 2))); }) ==
          ErrorKind::NotSeparated);
}

TEST_CASE("simplified inputs") {
    System s = testing::golden_rotation();
    auto empty = simplify_inputs(s, CircleSet::empty(), CircleSet::open_arc(0, q(1, 2)));
    CHECK(empty.U0.closure().subset_of(CircleSet::open_arc(0, q(1, 2))));
    auto si = simplify_inputs(s, CircleSet::closed_arc(0, q(1, 5)), CircleSet::open_arc(q(3, 10), q(6, 10)));
    CHECK(si.U0.closure().subset_of(si.U));
    CHECK(si.U0.closure().disjoint(si.C));
    CHECK(compare(si.C.measure(), si.U0.measure()) < 0);
    CHECK(compare(si.U0.measure(), q(1, 5)) > 0);
    CHECK(si.delta == q(1, 10));
    CHECK(kind_of([&] { simplify_inputs(s, CircleSet::closed_arc(0, q(1, 2)), CircleSet::open_arc(0, q(1, 2))); }) ==
          ErrorKind::GapNonpositive);

    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
        CircleSet C = testing::random_set(rng, 2).closure();
        CircleSet U = testing::random_set(rng, 3).interior();
        if (compare(C.measure(), U.measure()) >= 0) continue;
        auto r = simplify_inputs(s, C, U);
        if (r.trivial) continue;
        CHECK(r.U0.closure().subset_of(r.U));
        CHECK(r.U0.closure().disjoint(r.C));
        CHECK(compare(r.C.measure(), r.U0.measure()) < 0);
        CHECK(r.C.subset_of(C));
        if (r.patch) {
            // The core C together with the patch's 1-set covers the original C.
            CHECK(C.subset_of(r.C.unite(r.patch->first)));
            CHECK(r.patch->first.closure().subset_of(r.patch->second));
            CHECK(r.patch->second.subset_of(U));
            CHECK(r.patch->second.closure().disjoint(r.U0.closure()));
        }
    }
}

TEST_CASE("column counts and matching") {
    System s = testing::golden_rotation();
    auto tower = build_tower(s, CircleSet::closed_arc(0, testing::golden()));
    auto all = column_counts(tower, CircleSet::full());
    for (std::size_t k = 0; k < tower.columns.size(); ++k)
        CHECK(all[k].size() == static_cast<std::size_t>(tower.columns[k].height));
    for (const auto& l : column_counts(tower, CircleSet::empty())) CHECK(l.empty());
    CHECK(kind_of([&] { column_counts(tower, CircleSet::closed_arc(0, q(1, 10))); }) == ErrorKind::UnrefinedTower);

    auto m0 = column_matching({{}}, {{0, 1}});
    CHECK(m0.columns[0].s.empty());
    auto m1 = column_matching({{1}}, {{0, 2}});
    CHECK(m1.columns[0].t == std::vector<long>{0});
    CHECK(m1.columns[0].d == std::vector<long>{-1});
    auto m2 = column_matching({{0, 3}}, {{1, 2, 4}});
    CHECK(m2.columns[0].t == std::vector<long>{1, 2});
    CHECK(m2.columns[0].d == std::vector<long>{1, -1});
    CHECK(kind_of([&] { column_matching({{0, 1}}, {{2, 3}}); }) == ErrorKind::ColumnDeficit);
}

TEST_CASE("column counts agree with level classification") {
    System s = testing::golden_rotation();
    auto C = CircleSet::closed_arc(0, q(1, 5));
    auto U0 = CircleSet::open_arc(q(31, 100), q(59, 100));
    auto rest = C.unite(U0).complement().closure();
    auto tower = refine_tower(build_tower(s, disjoint_base(s, 20, Point::circle(0))), {C, U0.closure(), rest});
    auto cc = column_counts(tower, C);
    auto cu = column_counts(tower, U0);
    for (std::size_t k = 0; k < tower.columns.size(); ++k) {
        if (tower.columns[k].empty_interior) continue;
        std::vector<long> inC, inU;
        for (long j = 0; j < tower.columns[k].height; ++j) {
            CircleSet open = tower.level(k, j).circle().interior();
            if (open.subset_of(C)) inC.push_back(j);
            if (open.subset_of(U0)) inU.push_back(j);
        }
        CHECK(cc[k] == inC);
        CHECK(cu[k] == inU);
    }
}

TEST_CASE("clopen comparison") {
    System o = System::odometer({2, 2, 2});
    auto w = clopen_comparison(o, CylSet::of(8, {0, 1}), CylSet::of(8, {3, 5, 6}));
    REQUIRE(w.size() == 2);
    CHECK(w.d == std::vector<long>{3, 4});
    CHECK(verify_witness(o, CylSet::of(8, {0, 1}), CylSet::of(8, {3, 5, 6}), w).ok());
    auto e = clopen_comparison(o, CylSet(8), CylSet::of(8, {2}));
    CHECK(e.size() == 0);
    auto sub = clopen_comparison(o, CylSet::of(8, {2, 4}), CylSet::of(8, {1, 2, 4}));
    CHECK(sub.d == std::vector<long>{0, 0});
    CHECK(kind_of([&] { clopen_comparison(o, CylSet::of(8, {0, 1}), CylSet::of(8, {2, 3})); }) ==
          ErrorKind::GapNonpositive);

    System big = System::odometer({2, 3, 2, 2});
    std::mt19937_64 rng(42);
    for (int t = 0; t < 100; ++t) {
        CylSet A(big.K()), B(big.K());
        for (std::int64_t i = 0; i < big.K(); ++i) {
            long r = testing::uniform(rng, 0, 2);
            if (r == 0) A.set(i);
            if (r == 1) B.set(i);
        }
        if (A.count() >= B.count()) continue;
        CHECK(clopen_feasible_bruteforce(A, B));
        auto cw = clopen_comparison(big, A, B);
        CHECK(verify_witness(big, A, B, cw).ok());
    }
}

TEST_CASE("dynamic comparison on small inputs") {
    System s = testing::golden_rotation();
    auto z = dynamic_comparison(s, CircleSet::empty(), CircleSet::open_arc(0, q(1, 2)));
    REQUIRE(z.size() == 1);
    CHECK(z.f[0].is_zero());
    CHECK(verify_witness(s, CircleSet::empty(), CircleSet::open_arc(0, q(1, 2)), z).ok());
    CHECK(kind_of([&] { dynamic_comparison(s, CircleSet::closed_arc(0, q(1, 2)), CircleSet::open_arc(0, q(1, 2))); }) ==
          ErrorKind::GapNonpositive);

    // C inside U is handled without a tower.
    auto in = dynamic_comparison(s, CircleSet::closed_arc(q(1, 10), q(2, 10)), CircleSet::open_arc(0, q(3, 10)));
    CHECK(verify_witness(s, CircleSet::closed_arc(q(1, 10), q(2, 10)), CircleSet::open_arc(0, q(3, 10)), in).ok());

    ComparisonWitness empty;
    CHECK(verify_witness(s, CircleSet::empty(), CircleSet::open_arc(0, q(1, 2)), empty).ok());
}

TEST_CASE("dynamic comparison with a tower and mutations") {
    System s = testing::golden_rotation();
    auto C = CircleSet::closed_arc(0, q(1, 20));
    auto U = CircleSet::open_arc(q(1, 2), q(3, 4));
    auto w = dynamic_comparison(s, C, U);
    auto rep = verify_witness(s, C, U, w);
    CHECK(rep.ok());
    CHECK(w.summary.N1 > 0);
    CHECK(!w.summary.heights.empty());
    auto again = dynamic_comparison(s, C, U);
    CHECK(same_entries(w, again));

    std::mt19937_64 rng(43);
    for (int t = 0; t < 30 && w.size() > 0; ++t) {
        auto m = w;
        std::size_t j = static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<long>(w.size()) - 1));
        switch (t % 3) {
            case 0: m.d[j] += 1; break;
            case 1: m.f[j] = pl_scale(m.f[j], q(1, 2)); break;
            default:
                m.f.erase(m.f.begin() + static_cast<long>(j));
                m.d.erase(m.d.begin() + static_cast<long>(j));
        }
        CHECK(!verify_witness(s, C, U, m).ok());
    }
}
