#include "dyncomp/comparison.hpp"

#include "dyncomp/error.hpp"
#include "dyncomp/smallness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>

namespace dyncomp {

namespace {

// Stage timings on stderr when DYNCOMP_TRACE is set.
void trace(const std::string& stage) {
    static const bool on = std::getenv("DYNCOMP_TRACE") != nullptr;
    static const auto t0 = std::chrono::steady_clock::now();
    if (!on) return;
    double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "[" << t << "s] " << stage << "\n";
}

const CircleSet& as_circle(const Region& r, const char* what) {
    if (r.kind() != AmbientKind::Circle) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be a circle region");
    return r.circle();
}

// Open m-neighbourhood of a closed set.
CircleSet thicken(const CircleSet& s, const Scalar& m) {
    if (s.is_empty() || s.is_full()) return s;
    std::vector<CircleSet> parts;
    for (const auto& a : s.components()) {
        if (compare(a.length() + Scalar(2) * m, Scalar(1)) >= 0) return CircleSet::full();
        parts.push_back(CircleSet::open_arc(a.lo - m, a.hi + m));
    }
    return unite_all(std::move(parts));
}

long ceil_long(const Scalar& x) {
    mpz_class c = x.ceil();
    if (!c.fits_slong_p()) throw Error(ErrorKind::NonTermination, "N1 out of range");
    return c.get_si();
}

}  // namespace

BirkhoffCertificate birkhoff_certificate(const System& sys, const CircleSet& F, const CircleSet& E,
                                         const Scalar& sigma_fraction) {
    if (!sys.is_rotation()) throw Error(ErrorKind::InvalidInput, "Birkhoff certificates are built on rotations");
    if (!F.is_closed() || !E.is_open()) throw Error(ErrorKind::InvalidInput, "F must be closed and E open");
    if (sigma_fraction.sign() <= 0 || compare(sigma_fraction, Scalar(1)) >= 0)
        throw Error(ErrorKind::InvalidInput, "sigma fraction must lie in (0,1)");
    if (!F.disjoint(E.closure())) throw Error(ErrorKind::NotSeparated, "F meets the closure of E");
    Scalar gap = E.measure() - F.measure();
    if (gap.sign() <= 0) throw Error(ErrorKind::GapNonpositive, "mu(F) >= mu(E)");
    Scalar eps = gap / Scalar(3);

    BirkhoffCertificate cert;
    if (!F.is_empty()) {
        Scalar dist = circle_distance(F, E.closure());
        long p = static_cast<long>(std::max<std::size_t>(1, F.components().size()));
        Scalar m = min(dist / Scalar(4), eps / Scalar(4 * p));
        cert.g0 = bump(F, thicken(F, m));
    }
    if (E.is_full()) {
        cert.g1 = PLFunction::constant(Scalar(1));
    } else {
        CircleSet K = inner_approx(sys, E, eps).circle();
        cert.g1 = bump(K, E);
    }
    cert.g = pl_sub(cert.g1, cert.g0);
    Scalar I = integral(cert.g);
    if (I.sign() <= 0) throw Error(ErrorKind::GapNonpositive, "integral of g is not positive");
    cert.sigma = sigma_fraction * I;
    auto ge = global_extrema(cert.g);
    cert.max_abs_g = max(ge.min.abs(), ge.max.abs());

    for (long N = 1;; N *= 2) {
        Scalar m = global_extrema(birkhoff_sum(sys, cert.g, N)).min / Scalar(N);
        if (compare(m, cert.sigma) > 0) {
            cert.N0 = N;
            cert.m0 = m;
            break;
        }
        if (N > kMaxReturnTime) throw Error(ErrorKind::NonTermination, "no N0 found");
    }
    cert.N1 = cert.N0 * ceil_long((cert.m0 + cert.max_abs_g) / (cert.m0 - cert.sigma));
    return cert;
}

bool birkhoff_spot_check(const System& sys, const BirkhoffCertificate& cert, long N) {
    Scalar m = global_extrema(birkhoff_sum(sys, cert.g, N)).min / Scalar(N);
    return compare(m, cert.sigma) >= 0;
}

SimplifiedInputs simplify_inputs(const System& sys, const CircleSet& C, const CircleSet& U) {
    if (!C.is_closed() || !U.is_open()) throw Error(ErrorKind::InvalidInput, "C must be closed and U open");
    SimplifiedInputs s;
    s.delta = U.measure() - C.measure();
    if (s.delta.sign() <= 0) throw Error(ErrorKind::GapNonpositive, "mu(C) >= mu(U)");
    Scalar third = s.delta / Scalar(3);
    CircleSet U0 = regular_inner_approx(sys, U, third).V.circle();
    s.U = U;
    s.C = C;
    s.U0 = U0;
    if (C.subset_of(U0.closure())) {
        s.trivial = true;
        return s;
    }
    if (!C.disjoint(U0.closure())) {
        CircleSet V = regular_inner_approx(sys, U0, third).V.circle();
        CircleSet K = C.intersect(V.closure());
        if (K.is_empty()) {
            s.U0 = V;
        } else {
            Scalar e4 = (V.measure() - C.measure()) / Scalar(4);
            CircleSet G0 = regular_outer_approx(sys, K, U0, e4).V.circle();
            CircleSet G1 = regular_outer_approx(sys, G0.closure(), U0, e4).V.circle();
            CircleSet G2 = regular_outer_approx(sys, G1.closure(), U0, e4).V.circle();
            CircleSet E1 = V.minus(G2.closure());
            s.C = C.minus(G0);
            s.U = E1;
            s.U0 = regular_inner_approx(sys, E1, e4 / Scalar(4)).V.circle();
            s.patch = std::make_pair(G1.closure(), G2);
        }
    }
    if (!s.U0.closure().subset_of(s.U) || !s.U0.closure().disjoint(s.C) ||
        compare(s.C.measure(), s.U0.measure()) >= 0)
        throw Error(ErrorKind::Internal, "simplified inputs fail their checks");
    return s;
}

std::vector<std::vector<long>> column_counts(const RokhlinTower& tower, const Region& S) {
    check_ambient(tower.sys, S);
    std::vector<std::vector<long>> out(tower.columns.size());
    for (std::size_t k = 0; k < tower.columns.size(); ++k) {
        const auto& col = tower.columns[k];
        if (col.empty_interior) continue;
        for (long j = 0; j < col.height; ++j) {
            Region lv = tower.level(k, j);
            bool inside, outside;
            if (lv.kind() == AmbientKind::Cylinders) {
                inside = lv.cyl().subset_of(S.cyl());
                outside = lv.cyl().disjoint(S.cyl());
            } else if (lv.kind() == AmbientKind::Circle) {
                CircleSet open = lv.circle().interior();
                inside = open.subset_of(S.circle());
                outside = open.disjoint(S.circle());
            } else {
                throw Error(ErrorKind::InvalidInput, "column counts need a circle or odometer tower");
            }
            if (inside) {
                out[k].push_back(j);
            } else if (!outside) {
                throw Error(ErrorKind::UnrefinedTower, "level " + std::to_string(j) + " of column " +
                                                           std::to_string(k) + " straddles the set");
            }
        }
    }
    return out;
}

MatchingTable column_matching(const std::vector<std::vector<long>>& counts_C,
                              const std::vector<std::vector<long>>& counts_U0,
                              const std::vector<std::size_t>& columns) {
    if (counts_C.size() != counts_U0.size()) throw Error(ErrorKind::InvalidInput, "count tables differ in length");
    if (!columns.empty() && columns.size() != counts_C.size())
        throw Error(ErrorKind::InvalidInput, "column names do not match the tables");
    MatchingTable table;
    for (std::size_t i = 0; i < counts_C.size(); ++i) {
        ColumnMatch m;
        m.column = columns.empty() ? i : columns[i];
        m.N_C = counts_C[i];
        m.N_U0 = counts_U0[i];
        if (m.N_U0.size() <= m.N_C.size())
            throw Error(ErrorKind::ColumnDeficit,
                        "column " + std::to_string(m.column) + " has " + std::to_string(m.N_U0.size()) +
                            " levels in U_0 against " + std::to_string(m.N_C.size()) + " in C",
                        static_cast<long>(m.column));
        for (std::size_t j = 0; j < m.N_C.size(); ++j) {
            m.s.push_back(m.N_C[j]);
            m.t.push_back(m.N_U0[j]);
            m.d.push_back(m.N_U0[j] - m.N_C[j]);
        }
        table.columns.push_back(std::move(m));
    }
    return table;
}

bool same_entries(const ComparisonWitness& a, const ComparisonWitness& b) {
    return a.kind == b.kind && a.f == b.f && a.cyl == b.cyl && a.d == b.d && a.C == b.C && a.U == b.U;
}

ComparisonWitness clopen_comparison(const System& sys, const CylSet& A, const CylSet& B) {
    if (!sys.is_odometer()) throw Error(ErrorKind::InvalidInput, "clopen comparison runs on odometers");
    if (A.K() != sys.K() || B.K() != sys.K()) throw Error(ErrorKind::MixedAmbient, "sets are not at the system level");
    ComparisonWitness w;
    w.kind = AmbientKind::Cylinders;
    w.C = A;
    w.U = B;
    if (A.count() >= B.count() && !A.is_empty()) throw Error(ErrorKind::GapNonpositive, "mu(A) >= mu(B)");
    auto free_b = B.minus(A).indices();
    std::size_t next = 0;
    for (auto i : A.indices()) {
        std::int64_t t = B.contains(i) ? i : free_b.at(next++);
        w.cyl.push_back(CylSet::of(sys.K(), {i}));
        w.d.push_back(static_cast<long>(t - i));
    }
    return w;
}

bool clopen_feasible_bruteforce(const CylSet& A, const CylSet& B) {
    // Kuhn's augmenting paths on the complete bipartite graph A x B.
    auto a = A.indices(), b = B.indices();
    std::vector<long> owner(b.size(), -1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::vector<char> seen(b.size(), 0);
        std::function<bool(std::size_t)> augment = [&](std::size_t u) {
            for (std::size_t v = 0; v < b.size(); ++v) {
                if (seen[v]) continue;
                seen[v] = 1;
                if (owner[v] < 0 || augment(static_cast<std::size_t>(owner[v]))) {
                    owner[v] = static_cast<long>(u);
                    return true;
                }
            }
            return false;
        };
        if (!augment(i)) return false;
    }
    return true;
}

namespace {

// Pieces of a sorted disjoint arc list meeting [lo, hi] (inside [0,1]).
void collect_near(const std::vector<CircleSet::Arc>& arcs, const Scalar& lo, const Scalar& hi,
                  std::vector<CircleSet>& out) {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), lo,
                               [](const CircleSet::Arc& a, const Scalar& v) { return compare(a.hi, v) < 0; });
    for (; it != arcs.end() && compare(it->lo, hi) <= 0; ++it)
        out.push_back(CircleSet::arc(it->lo, it->hi, it->lo_closed, it->hi_closed));
}

// Union of the arcs of `arcs` that come near the arc [lo, hi] (unwrapped).
CircleSet near_part(const std::vector<CircleSet::Arc>& arcs, const Scalar& lo, const Scalar& hi) {
    std::vector<CircleSet> parts;
    if (compare(hi, Scalar(1)) <= 0) {
        collect_near(arcs, lo, hi, parts);
    } else {
        collect_near(arcs, lo, Scalar(1), parts);
        collect_near(arcs, Scalar(0), hi - Scalar(1), parts);
    }
    return unite_all(std::move(parts));
}

ComparisonWitness finish(const System& sys, const CircleSet& C, const CircleSet& U, std::vector<PLFunction> g,
                         std::vector<long> d) {
    ComparisonWitness w;
    w.kind = AmbientKind::Circle;
    w.C = C;
    w.U = U;
    auto f = min_cascade(g);
    for (std::size_t j = 0; j < f.size(); ++j) {
        if (!C.is_empty() && extrema_on(f[j], C).max.sign() == 0) continue;
        w.f.push_back(std::move(f[j]));
        w.d.push_back(d[j]);
    }
    (void)sys;
    return w;
}

ComparisonWitness compare_circle(const System& sys, const CircleSet& C, const CircleSet& U) {
    if (!sys.is_rotation()) throw Error(ErrorKind::InvalidInput, "dynamic comparison needs a rotation or an odometer");
    if (!C.is_closed() || !U.is_open()) throw Error(ErrorKind::InvalidInput, "C must be closed and U open");
    if (compare(C.measure(), U.measure()) >= 0) throw Error(ErrorKind::GapNonpositive, "mu(C) >= mu(U)");
    if (C.is_empty()) {
        ComparisonWitness w;
        w.C = C;
        w.U = U;
        w.f.push_back(PLFunction());
        w.d.push_back(0);
        return w;
    }
    SimplifiedInputs s = simplify_inputs(sys, C, U);
    if (s.trivial) return finish(sys, C, U, {bump(s.U0.closure(), U)}, {0});

    const Scalar& theta = sys.theta();
    trace("simplified");
    BirkhoffCertificate cert = birkhoff_certificate(sys, s.C, s.U0);
    trace("certificate N0=" + std::to_string(cert.N0) + " N1=" + std::to_string(cert.N1));
    WitnessSummary summary;
    summary.N0 = cert.N0;
    summary.N1 = cert.N1;
    summary.sigma = cert.sigma;

    std::vector<Region> partition{s.U0, s.C};
    CircleSet rest = s.U0.unite(s.C).complement();
    if (!rest.is_empty()) partition.push_back(rest);

    RokhlinTower tower;
    MatchingTable table;
    std::vector<std::size_t> Q;
    long N = cert.N1;
    for (int attempt = 1;; ++attempt) {
        summary.attempts = attempt;
        summary.tower_N = N;
        tower = refine_tower(build_tower(sys, disjoint_base(sys, N, Point::circle(Scalar(0)))), partition);
        trace("tower with " + std::to_string(tower.level_count()) + " levels");
        auto cC = column_counts(tower, s.C);
        auto cU = column_counts(tower, s.U0);
        Q.clear();
        std::vector<std::vector<long>> qC, qU;
        for (std::size_t k = 0; k < tower.columns.size(); ++k) {
            if (tower.columns[k].empty_interior) continue;
            Q.push_back(k);
            qC.push_back(cC[k]);
            qU.push_back(cU[k]);
        }
        try {
            table = column_matching(qC, qU, Q);
            break;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ColumnDeficit || attempt == 3) throw;
            N *= 3;
        }
    }
    for (const auto& col : tower.columns) {
        summary.heights.push_back(col.height);
        summary.empty_interior.push_back(col.empty_interior);
    }
    summary.matching = table;
    trace("matched");

    // Leftover: the points outside every open level, restricted to C.
    std::vector<CircleSet> open_levels;
    Scalar min_mass(1);
    for (std::size_t k = 0; k < tower.columns.size(); ++k) {
        const auto& col = tower.columns[k];
        if (col.empty_interior) continue;
        CircleSet base = col.base.circle();
        min_mass = min(min_mass, base.measure());
        CircleSet open = base.interior();
        for (long j = 0; j < col.height; ++j) open_levels.push_back(open.translate(Scalar(j) * theta));
    }
    CircleSet leftover = unite_all(std::move(open_levels)).complement();
    if (!leftover.is_finite() && !leftover.is_empty()) throw Error(ErrorKind::Internal, "leftover set is not finite");
    CircleSet L = leftover.intersect(s.C);
    summary.leftover_points = static_cast<long>(L.boundary_points().size());
    Scalar eps = min_mass / Scalar(2);
    trace("leftover " + std::to_string(summary.leftover_points) + " points");
    CircleSet target = s.U.minus(s.U0.closure());

    std::vector<PLFunction> g;
    std::vector<long> d;
    std::vector<CircleSet::Arc> vimg, timg;
    if (!L.is_empty()) {
        LeftoverCover lc = leftover_cover(sys, L, target, eps);
        std::vector<CircleSet> vs, ts;
        for (std::size_t i = 0; i < lc.F.size(); ++i) {
            Scalar back = Scalar(lc.shifts[i]) * theta;
            vs.push_back(lc.V[i].translate(back));
            ts.push_back(lc.T[i].closure().translate(back));
            g.push_back(lc.f[i]);
            d.push_back(lc.image_shift(i));
        }
        vimg = unite_all(std::move(vs)).pieces();
        timg = unite_all(std::move(ts)).pieces();
    }

    trace("leftover cover");
    // One function per matched level: 1 off the leftover neighbourhoods,
    // supported away from their cores.
    for (const auto& m : table.columns) {
        CircleSet base = tower.columns[m.column].base.circle();
        for (std::size_t i = 0; i < m.s.size(); ++i) {
            CircleSet lv = base.translate(Scalar(m.s[i]) * theta);
            auto a = lv.components().at(0);
            CircleSet A = lv.minus(near_part(vimg, a.lo, a.hi));
            if (A.is_empty()) continue;
            CircleSet B = lv.interior().minus(near_part(timg, a.lo, a.hi));
            g.push_back(bump(A, B));
            d.push_back(m.d[i]);
        }
    }
    if (s.patch) {
        g.push_back(bump(s.patch->first, s.patch->second));
        d.push_back(0);
    }
    trace("level functions");
    ComparisonWitness w = finish(sys, C, U, std::move(g), std::move(d));
    trace("cascade");
    w.summary = std::move(summary);
    return w;
}

}  // namespace

ComparisonWitness dynamic_comparison(const System& sys, const Region& C, const Region& U) {
    check_ambient(sys, C);
    check_ambient(sys, U);
    ComparisonWitness w;
    if (C.kind() == AmbientKind::Cylinders)
        w = clopen_comparison(sys, C.cyl(), U.cyl());
    else
        w = compare_circle(sys, as_circle(C, "C"), as_circle(U, "U"));
    auto rep = verify_witness(sys, C, U, w);
    trace("verified");
    if (!rep.ok()) throw Error(ErrorKind::Internal, "constructed witness fails verification");
    return w;
}

}  // namespace dyncomp
