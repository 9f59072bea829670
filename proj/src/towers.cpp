#include "dyncomp/towers.hpp"

#include "dyncomp/error.hpp"

#include <algorithm>
#include <map>

namespace dyncomp {

Region RokhlinTower::level(std::size_t k, long j) const { return translate_region(sys, columns.at(k).base, j); }

std::size_t RokhlinTower::level_count() const {
    std::size_t n = 0;
    for (const auto& c : columns) n += static_cast<std::size_t>(c.height);
    return n;
}

namespace {

// Leftmost point of a non-empty region, used for deterministic ordering.
Scalar leftmost(const Region& r) {
    if (r.kind() == AmbientKind::Cylinders) {
        auto idx = r.cyl().indices();
        return idx.empty() ? Scalar(0) : Scalar(static_cast<long>(idx.front()));
    }
    auto p = r.circle().pieces();
    return p.empty() ? Scalar(0) : p.front().lo;
}

template <class T>
void sort_by_height(std::vector<T>& v, long T::*height, Region T::*region) {
    std::vector<std::pair<Scalar, std::size_t>> keys;
    for (std::size_t i = 0; i < v.size(); ++i) keys.push_back({leftmost(v[i].*region), i});
    std::vector<std::size_t> order(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (v[a].*height != v[b].*height) return v[a].*height < v[b].*height;
        return compare(keys[a].first, keys[b].first) < 0;
    });
    std::vector<T> out;
    out.reserve(v.size());
    for (auto i : order) out.push_back(std::move(v[i]));
    v = std::move(out);
}

std::vector<ReturnCell> rotation_returns(const System& sys, const CircleSet& y) {
    if (!y.is_closed()) throw Error(ErrorKind::InvalidInput, "base must be closed");
    if (y.is_empty()) throw Error(ErrorKind::EmptyInput, "base is empty");
    if (y.is_full()) return {{CircleSet::full(), 1, false}};
    const Scalar& theta = sys.theta();
    Scalar back = -theta;
    std::vector<ReturnCell> cells;
    CircleSet inner = y.interior();
    CircleSet rem = inner, tin = inner, tcl = y;
    for (long j = 1; !rem.is_empty(); ++j) {
        if (j > kMaxReturnTime) throw Error(ErrorKind::NonTermination, "return time exceeds guard");
        tin = tin.translate(back);
        tcl = tcl.translate(back);
        CircleSet hit = rem.intersect(tin);
        if (!hit.is_empty()) cells.push_back({hit.closure(), j, false});
        rem = rem.minus(tcl);
    }
    CircleSet iso = y.minus(inner.closure());
    for (const auto& x : iso.boundary_points()) {
        Scalar z = x;
        long j = 1;
        for (;; ++j) {
            if (j > kMaxReturnTime) throw Error(ErrorKind::NonTermination, "return time exceeds guard");
            z += theta;
            if (compare(z, Scalar(1)) >= 0) z -= Scalar(1);
            if (y.contains(z)) break;
        }
        cells.push_back({CircleSet::point(x), j, true});
    }
    return cells;
}

std::vector<ReturnCell> odometer_returns(const CylSet& y) {
    auto idx = y.indices();
    if (idx.empty()) throw Error(ErrorKind::EmptyInput, "base is empty");
    std::int64_t K = y.K();
    std::map<long, CylSet> by_time;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        std::int64_t next = i + 1 < idx.size() ? idx[i + 1] : idx[0] + K;
        long t = static_cast<long>(next - idx[i]);
        auto it = by_time.try_emplace(t, CylSet(K)).first;
        it->second.set(idx[i]);
    }
    std::vector<ReturnCell> cells;
    for (auto& [t, s] : by_time) cells.push_back({s, t, false});
    return cells;
}

}  // namespace

std::vector<ReturnCell> first_return(const System& sys, const Region& Y) {
    check_ambient(sys, Y);
    std::vector<ReturnCell> cells;
    if (Y.kind() == AmbientKind::Circle)
        cells = rotation_returns(sys, Y.circle());
    else if (Y.kind() == AmbientKind::Cylinders)
        cells = odometer_returns(Y.cyl());
    else
        throw Error(ErrorKind::InvalidInput, "first return is implemented for rotations and odometers");
    sort_by_height(cells, &ReturnCell::time, &ReturnCell::region);
    return cells;
}

RokhlinTower build_tower(const System& sys, const Region& Y) {
    RokhlinTower t{sys, Y, {}};
    for (auto& c : first_return(sys, Y)) t.columns.push_back({c.region, c.time, c.empty_interior});
    return t;
}

namespace {

void check_partition(const System& sys, const std::vector<Region>& partition) {
    if (partition.empty()) throw Error(ErrorKind::InvalidPartition, "empty partition");
    Region cover = empty_region(sys);
    std::vector<Region> interiors;
    for (const auto& p : partition) {
        check_ambient(sys, p);
        cover = region_algebra(SetOp::Union, cover, region_algebra(SetOp::Closure, p));
        interiors.push_back(region_algebra(SetOp::Interior, p));
    }
    if (!(cover == whole_space(sys))) throw Error(ErrorKind::InvalidPartition, "partition does not cover the space");
    for (std::size_t i = 0; i < interiors.size(); ++i)
        for (std::size_t j = i + 1; j < interiors.size(); ++j)
            if (!region_algebra(SetOp::Intersect, interiors[i], interiors[j]).is_empty())
                throw Error(ErrorKind::InvalidPartition,
                            "elements " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
}

RokhlinTower refine_rotation(const RokhlinTower& tower, const std::vector<Region>& partition) {
    const Scalar& theta = tower.sys.theta();
    std::vector<Scalar> cuts_all;
    for (const auto& p : partition)
        for (const auto& b : p.circle().boundary_points()) cuts_all.push_back(b);
    std::sort(cuts_all.begin(), cuts_all.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });
    cuts_all.erase(std::unique(cuts_all.begin(), cuts_all.end()), cuts_all.end());

    RokhlinTower out{tower.sys, tower.base, {}};
    for (const auto& col : tower.columns) {
        if (col.empty_interior) {
            out.columns.push_back(col);
            continue;
        }
        for (const auto& a : col.base.circle().components()) {
            Scalar lo1 = a.lo - Scalar(1), hi1 = a.hi - Scalar(1);
            std::vector<Scalar> cuts;
            for (const auto& b : cuts_all) {
                Scalar y = b;
                for (long j = 0; j < col.height; ++j) {
                    bool inside = (compare(y, a.lo) > 0 && compare(y, a.hi) < 0) ||
                                  (compare(y, lo1) > 0 && compare(y, hi1) < 0);
                    if (inside) cuts.push_back(compare(y, a.lo) > 0 ? y : y + Scalar(1));
                    y -= theta;
                    if (y.sign() < 0) y += Scalar(1);
                }
            }
            std::sort(cuts.begin(), cuts.end(), [](const Scalar& x, const Scalar& z) { return compare(x, z) < 0; });
            cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
            Scalar lo = a.lo;
            for (const auto& c : cuts) {
                out.columns.push_back({CircleSet::closed_arc(lo, c), col.height, false});
                lo = c;
            }
            out.columns.push_back({CircleSet::closed_arc(lo, a.hi), col.height, false});
        }
    }
    sort_by_height(out.columns, &Column::height, &Column::base);
    return out;
}

RokhlinTower refine_odometer(const RokhlinTower& tower, const std::vector<Region>& partition) {
    std::int64_t K = tower.sys.K();
    std::vector<int> part_of(static_cast<std::size_t>(K), -1);
    for (std::size_t p = 0; p < partition.size(); ++p)
        for (auto i : partition[p].cyl().indices()) part_of[static_cast<std::size_t>(i)] = static_cast<int>(p);
    RokhlinTower out{tower.sys, tower.base, {}};
    for (const auto& col : tower.columns) {
        std::map<std::vector<int>, CylSet> groups;
        for (auto y : col.base.cyl().indices()) {
            std::vector<int> sig(static_cast<std::size_t>(col.height));
            for (long j = 0; j < col.height; ++j) sig[static_cast<std::size_t>(j)] = part_of[static_cast<std::size_t>((y + j) % K)];
            groups.try_emplace(sig, CylSet(K)).first->second.set(y);
        }
        for (auto& [sig, s] : groups) out.columns.push_back({s, col.height, false});
    }
    sort_by_height(out.columns, &Column::height, &Column::base);
    return out;
}

}  // namespace

RokhlinTower refine_tower(const RokhlinTower& tower, const std::vector<Region>& partition) {
    check_partition(tower.sys, partition);
    if (tower.sys.is_rotation()) return refine_rotation(tower, partition);
    if (tower.sys.is_odometer()) return refine_odometer(tower, partition);
    throw Error(ErrorKind::InvalidInput, "towers are implemented for rotations and odometers");
}

Region disjoint_base(const System& sys, long N, const Point& anchor) {
    if (N < 1) throw Error(ErrorKind::InvalidInput, "N must be positive");
    if (sys.is_rotation()) {
        if (anchor.coords.size() != 1) throw Error(ErrorKind::InvalidInput, "anchor must be a circle point");
        Scalar r = min_orbit_gap(sys, N) / Scalar(6);
        const Scalar& x = anchor.coords[0];
        return CircleSet::closed_arc(x - r, x + r);
    }
    if (sys.is_odometer()) {
        std::int64_t KL = 0;
        for (long l = 1; l <= sys.level(); ++l) {
            if (sys.K_at(l) > N) {
                KL = sys.K_at(l);
                break;
            }
        }
        if (KL == 0) throw Error(ErrorKind::InvalidInput, "truncation level too coarse for N = " + std::to_string(N));
        CylSet y(sys.K());
        for (std::int64_t i = anchor.index % KL; i < sys.K(); i += KL) y.set(i);
        return y;
    }
    throw Error(ErrorKind::InvalidInput, "disjoint_base is implemented for rotations and odometers");
}

Scalar kac_sum(const RokhlinTower& tower) {
    Scalar s(0);
    for (const auto& c : tower.columns) s += Scalar(c.height) * measure(tower.sys, c.base);
    return s;
}

TowerReport check_tower(const RokhlinTower& t) {
    TowerReport rep;
    rep.kac_sum = kac_sum(t);
    rep.kac = rep.kac_sum == Scalar(1);
    Region u = empty_region(t.sys);
    for (const auto& c : t.columns) u = region_algebra(SetOp::Union, u, c.base);
    rep.base_union = u == t.base;

    if (t.sys.is_odometer()) {
        std::int64_t K = t.sys.K();
        std::vector<int> hits(static_cast<std::size_t>(K), 0);
        for (const auto& c : t.columns)
            for (auto y : c.base.cyl().indices())
                for (long j = 0; j < c.height; ++j) ++hits[static_cast<std::size_t>((y + j) % K)];
        rep.open_levels_disjoint = std::all_of(hits.begin(), hits.end(), [](int h) { return h <= 1; });
        rep.levels_cover = std::all_of(hits.begin(), hits.end(), [](int h) { return h >= 1; });
        return rep;
    }

    struct Arc {
        Scalar lo, hi;
    };
    std::vector<Arc> arcs;
    const Scalar& theta = t.sys.theta();
    bool full_level = false;
    for (const auto& c : t.columns) {
        if (c.empty_interior) continue;
        if (c.base.circle().is_full()) {
            full_level = true;
            continue;
        }
        for (const auto& a : c.base.circle().components()) {
            Scalar lo = a.lo, len = a.length();
            for (long j = 0; j < c.height; ++j) {
                arcs.push_back({lo, lo + len});
                lo += theta;
                if (compare(lo, Scalar(1)) >= 0) lo -= Scalar(1);
            }
        }
    }
    if (full_level) {
        rep.open_levels_disjoint = arcs.empty() && t.columns.size() == 1 && t.columns[0].height == 1;
        rep.levels_cover = true;
        return rep;
    }
    std::sort(arcs.begin(), arcs.end(), [](const Arc& a, const Arc& b) { return compare(a.lo, b.lo) < 0; });
    rep.open_levels_disjoint = true;
    rep.levels_cover = !arcs.empty();
    for (std::size_t i = 0; i < arcs.size(); ++i) {
        Scalar next = i + 1 < arcs.size() ? arcs[i + 1].lo : arcs[0].lo + Scalar(1);
        int c = compare(arcs[i].hi, next);
        if (c > 0) rep.open_levels_disjoint = false;
        if (c < 0) rep.levels_cover = false;
    }
    return rep;
}

}  // namespace dyncomp
