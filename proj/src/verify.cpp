#include "dyncomp/comparison.hpp"

#include <algorithm>
#include <cstdint>

namespace dyncomp {

namespace {

VerificationReport verify_cyl(const System& sys, const CylSet& C, const CylSet& U, const ComparisonWitness& w) {
    VerificationReport rep;
    rep.range = true;
    std::int64_t K = sys.K();
    if (w.cyl.size() != w.d.size()) {
        rep.notes.push_back("entry count mismatch");
        return rep;
    }
    std::vector<int> cover(static_cast<std::size_t>(K), 0), hit(static_cast<std::size_t>(K), 0);
    rep.contained = true;
    for (std::size_t j = 0; j < w.cyl.size(); ++j) {
        if (w.cyl[j].K() != K) {
            rep.notes.push_back("entry " + std::to_string(j) + " is not at the system level");
            return VerificationReport{};
        }
        for (auto i : w.cyl[j].indices()) {
            ++cover[static_cast<std::size_t>(i)];
            std::int64_t t = ((i + w.d[j]) % K + K) % K;
            ++hit[static_cast<std::size_t>(t)];
            if (!U.contains(t)) rep.contained = false;
        }
    }
    rep.sum_on_C = true;
    for (auto i : C.indices())
        if (cover[static_cast<std::size_t>(i)] != 1) rep.sum_on_C = false;
    rep.disjoint = std::all_of(hit.begin(), hit.end(), [](int h) { return h <= 1; });
    if (!rep.sum_on_C) rep.notes.push_back("sum is not 1 on C");
    if (!rep.disjoint) rep.notes.push_back("translated levels overlap");
    if (!rep.contained) rep.notes.push_back("a translated level leaves U");
    return rep;
}

VerificationReport verify_circle(const System& sys, const CircleSet& C, const CircleSet& U,
                                 const ComparisonWitness& w) {
    VerificationReport rep;
    if (w.f.size() != w.d.size()) {
        rep.notes.push_back("entry count mismatch");
        return rep;
    }
    rep.range = true;
    for (std::size_t j = 0; j < w.f.size() && rep.range; ++j) {
        auto e = global_extrema(w.f[j]);
        if (e.min.sign() < 0 || compare(e.max, Scalar(1)) > 0) {
            rep.range = false;
            rep.notes.push_back("entry " + std::to_string(j) + " leaves [0,1]");
        }
    }
    if (C.is_empty()) {
        rep.sum_on_C = true;
    } else {
        auto e = extrema_on(pl_sum_all(w.f), C);
        rep.sum_on_C = e.min == Scalar(1) && e.max == Scalar(1);
        if (!rep.sum_on_C) rep.notes.push_back("sum on C ranges over [" + e.min.str() + ", " + e.max.str() + "]");
    }

    struct Piece {
        CircleSet::Arc arc;
        std::size_t owner;
    };
    std::vector<Piece> pieces;
    rep.contained = true;
    for (std::size_t j = 0; j < w.f.size(); ++j) {
        CircleSet s = support_set(w.f[j]).translate(Scalar(w.d[j]) * sys.theta());
        if (!s.subset_of(U)) {
            if (rep.contained) rep.notes.push_back("translated support of entry " + std::to_string(j) + " leaves U");
            rep.contained = false;
        }
        for (const auto& a : s.pieces()) pieces.push_back({a, j});
    }
    std::sort(pieces.begin(), pieces.end(), [](const Piece& x, const Piece& y) {
        int c = compare(x.arc.lo, y.arc.lo);
        return c != 0 ? c < 0 : x.owner < y.owner;
    });
    // Sweep keeping the piece reaching furthest right.
    rep.disjoint = true;
    std::size_t best = 0;
    for (std::size_t i = 1; i < pieces.size(); ++i) {
        const auto& p = pieces[best];
        const auto& q = pieces[i];
        int c = compare(q.arc.lo, p.arc.hi);
        bool meet = c < 0 || (c == 0 && p.arc.hi_closed && q.arc.lo_closed);
        if (meet && p.owner != q.owner) {
            rep.disjoint = false;
            rep.notes.push_back("translated supports of entries " + std::to_string(p.owner) + " and " +
                                std::to_string(q.owner) + " meet");
            break;
        }
        if (compare(q.arc.hi, p.arc.hi) > 0) best = i;
    }
    return rep;
}

}  // namespace

VerificationReport verify_witness(const System& sys, const Region& C, const Region& U, const ComparisonWitness& w) {
    if (C.kind() != U.kind()) return VerificationReport{false, false, false, false, {"C and U live on different spaces"}};
    if (C.kind() == AmbientKind::Cylinders) {
        if (!sys.is_odometer() || w.kind != AmbientKind::Cylinders)
            return VerificationReport{false, false, false, false, {"witness does not match the system"}};
        return verify_cyl(sys, C.cyl(), U.cyl(), w);
    }
    if (C.kind() != AmbientKind::Circle || !sys.is_rotation() || w.kind != AmbientKind::Circle)
        return VerificationReport{false, false, false, false, {"witness does not match the system"}};
    return verify_circle(sys, C.circle(), U.circle(), w);
}

}  // namespace dyncomp
