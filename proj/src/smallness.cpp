#include "dyncomp/smallness.hpp"

#include "dyncomp/error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dyncomp {

namespace {

struct ScalarLess {
    bool operator()(const Scalar& a, const Scalar& b) const { return compare(a, b) < 0; }
};

Scalar wrap_up(Scalar s) {
    if (compare(s, Scalar(1)) >= 0) s -= Scalar(1);
    return s;
}

Scalar wrap_down(Scalar s) {
    if (s.sign() < 0) s += Scalar(1);
    return s;
}

// x = key + j*theta (mod 1); two points share an orbit iff their keys agree.
std::pair<Scalar, long> orbit_position(const Scalar& x, const Scalar& theta) {
    if (x.D() != 0 && x.D() != theta.D()) throw Error(ErrorKind::CrossField, "point outside the rotation's field");
    mpq_class beta(x.b() * theta.c(), x.c() * theta.b());
    beta.canonicalize();
    mpz_class j;
    mpz_fdiv_q(j.get_mpz_t(), beta.get_num_mpz_t(), beta.get_den_mpz_t());
    if (!j.fits_slong_p()) throw Error(ErrorKind::InvalidInput, "orbit position out of range");
    long jl = j.get_si();
    return {(x - Scalar(jl) * theta).frac(), jl};
}

std::vector<Scalar> finite_points_of(const Region& F) {
    const auto& f = F.circle();
    if (f.is_empty()) return {};
    if (!f.is_finite()) throw Error(ErrorKind::InvalidInput, "F must be a finite point set");
    return f.finite_points();
}

}  // namespace

long distinct_sums_card(const std::vector<long>& d, std::pair<long, long> n) {
    std::set<long> ds(d.begin(), d.end());
    if (ds.size() != d.size()) throw Error(ErrorKind::DuplicateInput, "d has repeated entries");
    if (n.first == n.second) throw Error(ErrorKind::DuplicateInput, "n_1 = n_2");
    std::set<long> sums;
    for (long x : d) {
        sums.insert(x + n.first);
        sums.insert(x + n.second);
    }
    return static_cast<long>(sums.size());
}

long smallness_by_search(const System& sys, const std::vector<Scalar>& F, long depth) {
    std::vector<Scalar> pts;
    const Scalar& theta = sys.theta();
    for (const auto& x : F) {
        Scalar start = (x - Scalar(depth) * theta).frac();
        for (long d = -depth; d <= depth; ++d) {
            pts.push_back(start);
            start = wrap_up(start + theta);
        }
    }
    std::sort(pts.begin(), pts.end(), ScalarLess());
    long best = 0, run = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        run = (i > 0 && compare(pts[i], pts[i - 1]) == 0) ? run + 1 : 1;
        best = std::max(best, run);
    }
    return best;
}

SmallnessCertificate smallness_constant(const System& sys, const Region& F, long search_depth) {
    check_ambient(sys, F);
    SmallnessCertificate cert;
    if (F.kind() == AmbientKind::Cylinders) {
        if (!F.is_empty()) throw Error(ErrorKind::InvalidInput, "F must be a finite point set");
        return cert;
    }
    if (F.kind() != AmbientKind::Circle) throw Error(ErrorKind::InvalidInput, "smallness is decided on the circle");
    auto pts = finite_points_of(F);
    if (pts.empty()) return cert;
    const Scalar& theta = sys.theta();
    std::map<Scalar, std::vector<long>, ScalarLess> classes;
    try {
        for (const auto& x : pts) {
            auto [key, j] = orbit_position(x, theta);
            classes[key].push_back(j);
        }
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::CrossField) throw;
        long m = smallness_by_search(sys, pts, search_depth);
        if (m < static_cast<long>(pts.size()) && search_depth < 1)
            throw Error(ErrorKind::SearchExhausted, "no decision procedure and no search depth");
        cert.constant = static_cast<long>(pts.size());
        cert.verdict = Verdict::BoundedSearch;
        cert.search_depth = search_depth;
        (void)m;
        return cert;
    }
    const std::vector<long>* best = nullptr;
    for (const auto& [key, js] : classes)
        if (!best || js.size() > best->size()) best = &js;
    std::vector<long> js = *best;
    std::sort(js.begin(), js.end());
    cert.constant = static_cast<long>(js.size());
    for (auto it = js.rbegin(); it != js.rend(); ++it) cert.witness.push_back(js.back() - *it);
    return cert;
}

long union_smallness_bound(const std::vector<SmallnessCertificate>& certs) {
    long s = 0;
    for (const auto& c : certs) {
        if (c.verdict != Verdict::Proven) throw Error(ErrorKind::UnprovenInput, "certificate is not proven");
        s += c.constant;
    }
    return s;
}

bool translates_meet(const System& sys, const CircleSet& F, const std::vector<long>& d) {
    if (d.empty()) return true;
    CircleSet acc = F.translate(Scalar(d[0]) * sys.theta());
    for (std::size_t i = 1; i < d.size() && !acc.is_empty(); ++i)
        acc = acc.intersect(F.translate(Scalar(d[i]) * sys.theta()));
    return !acc.is_empty();
}

namespace {

struct Targets {
    std::vector<Scalar> src;
    std::vector<long> k;  // image shift: src + k*theta lands in U
    std::vector<Scalar> dst;
};

// Nearest free target of one point by direct scan, for points outside the field.
bool scan_target(const Scalar& x, const Scalar& theta, const CircleSet& U, long depth, long& k, Scalar& z) {
    Scalar up = x, down = x;
    for (long step = 0; step <= depth; ++step) {
        if (step > 0) {
            up = wrap_up(up + theta);
            down = wrap_down(down - theta);
        }
        if (U.contains(up)) {
            k = step;
            z = up;
            return true;
        }
        if (step > 0 && U.contains(down)) {
            k = -step;
            z = down;
            return true;
        }
    }
    return false;
}

// For each point the least |k| (ties to +k) with x + k theta in U and not
// used by an earlier point. Points sharing an orbit compete for the same
// targets, so each orbit is handled as a block over a window of positions.
Targets find_targets(const System& sys, const std::vector<Scalar>& pts, const CircleSet& U, long depth) {
    const Scalar& theta = sys.theta();
    std::size_t n = pts.size();
    Targets t;
    t.src = pts;
    t.k.assign(n, 0);
    t.dst.assign(n, Scalar(0));
    std::map<Scalar, std::vector<std::pair<std::size_t, long>>, ScalarLess> orbits;
    for (std::size_t i = 0; i < n; ++i) {
        try {
            auto [key, j] = orbit_position(pts[i], theta);
            orbits[key].push_back({i, j});
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CrossField) throw;
            if (!scan_target(pts[i], theta, U, depth, t.k[i], t.dst[i]))
                throw Error(ErrorKind::SearchExhausted, "orbit misses U within the search depth");
        }
    }
    for (const auto& [key, members] : orbits) {
        long jmin = members.front().second, jmax = jmin;
        for (const auto& m : members) {
            jmin = std::min(jmin, m.second);
            jmax = std::max(jmax, m.second);
        }
        for (long W = 64;; W *= 4) {
            long reach = std::min(W, depth);
            long lo = jmin - reach, hi = jmax + reach;
            std::map<long, Scalar> avail;
            Scalar z = (key + Scalar(lo) * theta).frac();
            for (long m = lo; m <= hi; ++m) {
                if (U.contains(z)) avail.emplace(m, z);
                z = wrap_up(z + theta);
            }
            bool resolved = true;
            for (const auto& [i, j] : members) {
                auto up = avail.lower_bound(j);
                auto pick = avail.end();
                if (up != avail.end()) pick = up;
                if (up != avail.begin()) {
                    auto down = std::prev(up);
                    if (pick == avail.end() || j - down->first < up->first - j) pick = down;
                }
                long dist = pick == avail.end() ? hi - lo + 1 : std::abs(pick->first - j);
                if (dist > std::min(j - lo, hi - j)) {
                    // A closer target may lie outside the window.
                    if (reach >= depth) {
                        if (pick == avail.end() || dist > depth)
                            throw Error(ErrorKind::SearchExhausted, "orbit misses U within the search depth");
                    } else {
                        resolved = false;
                        break;
                    }
                }
                t.k[i] = pick->first - j;
                t.dst[i] = pick->second;
                avail.erase(pick);
            }
            if (resolved) break;
        }
    }
    return t;
}

// Smallest distance between distinct targets (1 for a single target) and to the complement of U.
std::pair<Scalar, Scalar> target_margins(const std::vector<Scalar>& dst, const CircleSet& U) {
    std::vector<Scalar> s = dst;
    std::sort(s.begin(), s.end(), ScalarLess());
    Scalar rho(1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) rho = min(rho, s[i + 1] - s[i]);
    if (s.size() > 1) rho = min(rho, s[0] + Scalar(1) - s.back());
    Scalar eta(1);
    if (!U.is_full())
        for (const auto& z : dst) eta = min(eta, distance_to_complement(z, U));
    return {rho, eta};
}

}  // namespace

ThinCover thin_cover(const System& sys, const CircleSet& F, const CircleSet& U, long search_depth) {
    if (!sys.is_rotation()) throw Error(ErrorKind::InvalidInput, "thin covers are built on rotations");
    if (U.is_empty() || !U.is_open()) throw Error(ErrorKind::InvalidInput, "U must be open and non-empty");
    ThinCover cover;
    auto pts = finite_points_of(F);
    if (pts.empty()) return cover;
    Targets t = find_targets(sys, pts, U, search_depth);
    auto [rho, eta] = target_margins(t.dst, U);
    Scalar r = dyadic_floor(min(rho, Scalar(2) * eta) / Scalar(4));
    Scalar half = r * Scalar::rational(1, 2);
    std::vector<CircleSet> small;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        cover.opens.push_back(CircleSet::open_arc(t.src[i] - r, t.src[i] + r));
        cover.shifts.push_back(t.k[i]);
        small.push_back(CircleSet::open_arc(t.src[i] - half, t.src[i] + half));
    }
    cover.nbhd = unite_all(std::move(small));
    return cover;
}

std::vector<std::pair<CircleSet, long>> closed_thin_cover(const System& sys, const CircleSet& F, const CircleSet& U,
                                                          long search_depth) {
    ThinCover c = thin_cover(sys, F, U, search_depth);
    std::vector<std::pair<CircleSet, long>> out;
    for (std::size_t i = 0; i < c.opens.size(); ++i) {
        // Closed arc of half the radius around the same point.
        auto a = c.opens[i].components().at(0);
        Scalar q = a.length() * Scalar::rational(1, 4);
        out.push_back({CircleSet::closed_arc(a.lo + q, a.hi - q), c.shifts[i]});
    }
    return out;
}

bool verify_thin_cover(const System& sys, const CircleSet& F, const CircleSet& U, const ThinCover& cover) {
    if (cover.opens.size() != cover.shifts.size()) return false;
    if (!F.subset_of(unite_all(cover.opens))) return false;
    if (!cover.nbhd.is_open() || !F.subset_of(cover.nbhd)) return false;
    if (!cover.nbhd.closure().subset_of(unite_all(cover.opens))) return false;
    std::vector<CircleSet> images;
    Scalar total(0);
    for (std::size_t i = 0; i < cover.opens.size(); ++i) {
        if (!cover.opens[i].is_open()) return false;
        images.push_back(cover.opens[i].translate(Scalar(cover.shifts[i]) * sys.theta()));
        if (!images.back().subset_of(U)) return false;
        total += images.back().measure();
    }
    // Open sets with additive measure are pairwise disjoint.
    return unite_all(images).measure() == total;
}

LeftoverCover leftover_cover(const System& sys, const CircleSet& F, const CircleSet& U, const Scalar& eps,
                             long search_depth) {
    if (!sys.is_rotation()) throw Error(ErrorKind::InvalidInput, "leftover covers are built on rotations");
    if (U.is_empty() || !U.is_open()) throw Error(ErrorKind::InvalidInput, "U must be open and non-empty");
    if (eps.sign() <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
    LeftoverCover lc;
    lc.epsilon = eps;
    auto pts = finite_points_of(F);
    if (pts.empty()) return lc;
    Targets t = find_targets(sys, pts, U, search_depth);
    auto [rho, eta] = target_margins(t.dst, U);
    Scalar p(static_cast<long>(pts.size()));
    Scalar R = dyadic_floor(min(min(rho / Scalar(4), eta / Scalar(2)), eps / (Scalar(4) * p)));
    Scalar r4 = R * Scalar::rational(1, 4), r2 = R * Scalar::rational(1, 2), r34 = R * Scalar::rational(3, 4);
    std::vector<PLFunction> g;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const Scalar& x = t.src[i];
        const Scalar& z = t.dst[i];
        lc.F.push_back(CircleSet::closed_arc(x - r4, x + r4));
        lc.T.push_back(CircleSet::open_arc(z - r2, z + r2));
        lc.V.push_back(CircleSet::open_arc(z - r34, z + r34));
        lc.W.push_back(CircleSet::open_arc(z - R, z + R));
        lc.shifts.push_back(-t.k[i]);
        g.push_back(bump(CircleSet::closed_arc(x - r34, x + r34), CircleSet::open_arc(x - R, x + R)));
    }
    lc.f = min_cascade(g);
    return lc;
}

LeftoverReport check_leftover_cover(const System& sys, const CircleSet& F, const CircleSet& U,
                                    const LeftoverCover& c) {
    LeftoverReport rep;
    std::size_t n = c.F.size();
    if (c.T.size() != n || c.V.size() != n || c.W.size() != n || c.f.size() != n || c.shifts.size() != n) return rep;
    const Scalar& theta = sys.theta();
    rep.covers = F.subset_of(unite_all(c.F));
    rep.nested = true;
    rep.supports = true;
    std::vector<CircleSet> pulled;
    for (std::size_t j = 0; j < n && rep.nested; ++j) {
        Scalar img = Scalar(-c.shifts[j]) * theta;
        rep.nested = c.F[j].translate(img).subset_of(c.T[j]) && c.T[j].is_open() && c.V[j].is_open() &&
                     c.W[j].is_open() && c.T[j].closure().subset_of(c.V[j]) &&
                     c.V[j].closure().subset_of(c.W[j]) && c.W[j].subset_of(U);
        if (!support_set(c.f[j]).translate(img).subset_of(c.W[j])) rep.supports = false;
        pulled.push_back(c.V[j].closure().translate(Scalar(c.shifts[j]) * theta));
    }
    if (!rep.nested) return rep;
    if (n == 0) {
        rep.partition = true;
    } else {
        bool in_range = true;
        for (const auto& f : c.f) {
            auto e = global_extrema(f);
            in_range = in_range && e.min.sign() >= 0 && compare(e.max, Scalar(1)) <= 0;
        }
        auto e = extrema_on(pl_sum_all(c.f), unite_all(pulled));
        rep.partition = in_range && e.min == Scalar(1) && e.max == Scalar(1);
    }
    Scalar total(0);
    for (const auto& w : c.W) total += w.measure();
    rep.disjoint = unite_all(c.W).measure() == total && compare(total, c.epsilon) < 0;
    return rep;
}

namespace {

Scalar arc_gap(const CircleSet& a, const CircleSet& b) {
    if (a.is_full() || b.is_full() || !a.disjoint(b)) return Scalar(0);
    return circle_distance(a, b);
}

// Open m-neighbourhood of a closed circle set.
CircleSet thicken(const CircleSet& s, const Scalar& m) {
    if (s.is_empty() || s.is_full()) return s;
    std::vector<CircleSet> parts;
    for (const auto& a : s.closure().components()) {
        if (compare(a.length() + Scalar(2) * m, Scalar(1)) >= 0) return CircleSet::full();
        parts.push_back(CircleSet::open_arc(a.lo - m, a.hi + m));
    }
    return unite_all(std::move(parts));
}

SmallnessCertificate boundary_cert(const System& sys, const CircleSet& U) {
    return smallness_constant(sys, CircleSet::points(U.boundary_points()));
}

Separation separate_circle(const System& sys, const CircleSet& F, const CircleSet& K) {
    if (!F.is_closed() || !K.is_closed()) throw Error(ErrorKind::InvalidInput, "F and K must be closed");
    if (!F.disjoint(K)) throw Error(ErrorKind::NotDisjoint, "F and K intersect");
    Separation s;
    if (F.is_empty() && K.is_empty()) {
        s.U = CircleSet();
        s.V = CircleSet();
    } else if (F.is_empty() || K.is_empty()) {
        const CircleSet& other = F.is_empty() ? K : F;
        if (other.is_full()) {
            if (K.is_full()) throw Error(ErrorKind::DegenerateInput, "K is the whole space and F is empty");
            s.U = CircleSet::full();
            s.V = CircleSet();
            s.cert = boundary_cert(sys, s.U.circle());
            return s;
        }
        // A small arc in the largest gap of the non-empty set.
        CircleSet::Arc best;
        bool first = true;
        for (const auto& a : other.complement().components())
            if (first || compare(a.length(), best.length()) > 0) {
                best = a;
                first = false;
            }
        Scalar L = best.length();
        Scalar mid = (best.lo + best.hi) * Scalar::rational(1, 2);
        CircleSet arc = CircleSet::open_arc(mid - L / Scalar(8), mid + L / Scalar(8));
        CircleSet grown = thicken(other, L / Scalar(8));
        s.U = F.is_empty() ? arc : grown;
        s.V = F.is_empty() ? grown : arc;
    } else {
        Scalar m = circle_distance(F, K) / Scalar(4);
        s.U = thicken(F, m);
        s.V = thicken(K, m);
    }
    s.cert = boundary_cert(sys, s.U.circle());
    return s;
}

TorusSet thicken_torus(const TorusSet& s, const Scalar& m) {
    TorusSet out(s.dim());
    for (const auto& cell : s.cells()) {
        std::vector<CircleSet> f;
        for (const auto& c : cell) f.push_back(thicken(c.closure(), m));
        out = out.unite(TorusSet::box(f));
    }
    return out;
}

Separation separate_torus(const System& sys, const TorusSet& F, const TorusSet& K) {
    if (!(F.closure() == F) || !(K.closure() == K)) throw Error(ErrorKind::InvalidInput, "F and K must be closed");
    if (!F.disjoint(K)) throw Error(ErrorKind::NotDisjoint, "F and K intersect");
    int d = sys.dim();
    Separation s;
    if (F.is_empty()) {
        if (K.is_full()) throw Error(ErrorKind::DegenerateInput, "K is the whole space and F is empty");
        s.U = TorusSet(d);
        s.V = TorusSet::full(d);
    } else if (K.is_empty()) {
        s.U = TorusSet::full(d);
        s.V = TorusSet(d);
    } else {
        // Sup-metric distance between the closed cells of F and of K.
        Scalar gap(1);
        auto kc = K.cells();
        for (const auto& fc : F.cells())
            for (const auto& c : kc) {
                Scalar dist(0);
                for (int i = 0; i < d; ++i) dist = max(dist, arc_gap(fc[i].closure(), c[i].closure()));
                gap = min(gap, dist);
            }
        if (gap.sign() <= 0) throw Error(ErrorKind::Internal, "zero distance between disjoint closed sets");
        Scalar m = gap / Scalar(4);
        s.U = thicken_torus(F, m);
        s.V = thicken_torus(K, m);
    }
    // The boundary of U lies in the union over axes of the slabs {x_n in cuts_n};
    // each slab is small with the axis constant, so the union takes their sum.
    const TorusSet& u = s.U.torus();
    for (int i = 0; i < d; ++i) {
        System axis = System::rotation(sys.thetas()[i]);
        auto c = smallness_constant(axis, CircleSet::points(u.cuts(i)));
        s.cert.per_axis.push_back(c.constant);
        s.cert.constant += c.constant;
    }
    return s;
}

}  // namespace

Separation tsbp_separate(const System& sys, const Region& F, const Region& K) {
    check_ambient(sys, F);
    check_ambient(sys, K);
    switch (F.kind()) {
        case AmbientKind::Circle: return separate_circle(sys, F.circle(), K.circle());
        case AmbientKind::Torus: return separate_torus(sys, F.torus(), K.torus());
        case AmbientKind::Cylinders: {
            if (!F.cyl().disjoint(K.cyl())) throw Error(ErrorKind::NotDisjoint, "F and K intersect");
            if (F.is_empty() && K.cyl().complement().is_empty())
                throw Error(ErrorKind::DegenerateInput, "K is the whole space and F is empty");
            return Separation{F, K, SmallnessCertificate{}};
        }
    }
    throw Error(ErrorKind::Internal, "unknown region kind");
}

RegularApprox tsbp_point_nbhd(const System& sys, const Point& x, const Region& U) {
    check_ambient(sys, U);
    if (U.kind() == AmbientKind::Cylinders) {
        if (!U.cyl().contains(x.index)) throw Error(ErrorKind::PointOutside, "x is not in U");
        return {CylSet::of(sys.K(), {x.index}), SmallnessCertificate{}};
    }
    if (U.kind() != AmbientKind::Circle) throw Error(ErrorKind::InvalidInput, "point neighbourhoods on the circle");
    const auto& u = U.circle();
    const Scalar& p = x.coords.at(0);
    if (!u.interior().contains(p)) throw Error(ErrorKind::PointOutside, "x is not in U");
    Scalar r = u.is_full() ? Scalar::rational(1, 4) : distance_to_complement(p, u) / Scalar(2);
    CircleSet v = CircleSet::open_arc(p - r, p + r);
    return {v, boundary_cert(sys, v)};
}

RegularApprox regular_inner_approx(const System& sys, const Region& U, const Scalar& eps) {
    check_ambient(sys, U);
    if (U.is_empty()) throw Error(ErrorKind::EmptyInput, "U is empty");
    if (U.kind() == AmbientKind::Cylinders) return {U, SmallnessCertificate{}};
    if (U.kind() != AmbientKind::Circle) throw Error(ErrorKind::InvalidInput, "regular approximation on the circle");
    const auto& u = U.circle();
    CircleSet v;
    if (u.is_full())
        v = small_nbhd(sys, CircleSet::point(Scalar(0)), eps).circle().closure().complement();
    else
        v = inner_approx(sys, U, eps).circle().interior();
    if (!v.closure().subset_of(u) || compare(u.measure() - v.closure().measure(), eps) >= 0)
        throw Error(ErrorKind::Internal, "regular_inner_approx self-check failed");
    return {v, boundary_cert(sys, v)};
}

RegularApprox regular_outer_approx(const System& sys, const Region& F, const Region& U, const Scalar& eps) {
    check_ambient(sys, F);
    check_ambient(sys, U);
    if (eps.sign() <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
    if (F.kind() == AmbientKind::Cylinders) {
        if (!F.cyl().subset_of(U.cyl())) throw Error(ErrorKind::NotContained, "F is not inside U");
        return {F, SmallnessCertificate{}};
    }
    if (F.kind() != AmbientKind::Circle) throw Error(ErrorKind::InvalidInput, "regular approximation on the circle");
    const auto& f = F.circle();
    const auto& u = U.circle();
    if (!f.is_closed() || !u.is_open()) throw Error(ErrorKind::InvalidInput, "F must be closed and U open");
    if (!f.subset_of(u)) throw Error(ErrorKind::NotContained, "F is not inside U");
    if (u.is_empty()) throw Error(ErrorKind::EmptyInput, "U is empty");
    CircleSet v;
    if (f.is_full()) {
        v = f;
    } else if (f.is_empty()) {
        auto a = u.is_full() ? CircleSet::Arc{Scalar(0), Scalar(1), false, false} : u.components().front();
        Scalar mid = (a.lo + a.hi) * Scalar::rational(1, 2);
        Scalar r = min(eps / Scalar(4), a.length() / Scalar(4));
        v = CircleSet::open_arc(mid - r, mid + r);
    } else {
        auto comps = f.components();
        std::size_t p = comps.size();
        Scalar budget = eps / Scalar(static_cast<long>(4 * p));
        std::vector<CircleSet> parts;
        for (std::size_t i = 0; i < p; ++i) {
            Scalar before = comps[i].lo - comps[(i + p - 1) % p].hi;
            if (i == 0) before += Scalar(1);
            Scalar after = comps[(i + 1) % p].lo - comps[i].hi;
            if (i + 1 == p) after += Scalar(1);
            Scalar left = min(budget, before / Scalar(8));
            Scalar right = min(budget, after / Scalar(8));
            if (!u.is_full()) {
                left = min(left, distance_to_complement(comps[i].lo, u) / Scalar(2));
                right = min(right, distance_to_complement(comps[i].hi, u) / Scalar(2));
            }
            parts.push_back(CircleSet::open_arc(comps[i].lo - left, comps[i].hi + right));
        }
        v = unite_all(std::move(parts));
    }
    if (!f.subset_of(v) || !v.closure().subset_of(u) || compare(v.measure() - f.measure(), eps) >= 0)
        throw Error(ErrorKind::Internal, "regular_outer_approx self-check failed");
    return {v, boundary_cert(sys, v)};
}

}  // namespace dyncomp
