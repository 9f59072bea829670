#include "dyncomp/plfun.hpp"

#include "dyncomp/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace dyncomp {

namespace {

bool x_less(const Breakpoint& a, const Breakpoint& b) { return compare(a.x, b.x) < 0; }

// x of the breakpoint after i, unwrapped past 1 for the last one.
Scalar next_x(const std::vector<Breakpoint>& bp, std::size_t i) {
    return i + 1 < bp.size() ? bp[i + 1].x : bp[0].x + Scalar(1);
}

}  // namespace

PLFunction PLFunction::constant(const Scalar& c) {
    PLFunction f;
    f.bp_[0].v = c;
    return f;
}

PLFunction make_sorted(std::vector<Breakpoint> bps) {
    PLFunction f;
    if (bps.empty()) return f;
    f.bp_ = std::move(bps);
    f.canonicalize();
    return f;
}

PLFunction PLFunction::from_breakpoints(std::vector<Breakpoint> bps) {
    for (auto& b : bps) b.x = b.x.frac();
    std::stable_sort(bps.begin(), bps.end(), x_less);
    std::vector<Breakpoint> out;
    for (auto& b : bps) {
        if (!out.empty() && compare(out.back().x, b.x) == 0) {
            if (out.back().v != b.v) throw Error(ErrorKind::InvalidInput, "conflicting values at one breakpoint");
            continue;
        }
        out.push_back(std::move(b));
    }
    return make_sorted(std::move(out));
}

void PLFunction::canonicalize() {
    std::size_t m = bp_.size();
    if (m <= 1) {
        if (m == 1) bp_[0].x = Scalar(0);
        return;
    }
    std::vector<char> keep(m, 1);
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t p = (i + m - 1) % m;
        Scalar xp = i == 0 ? bp_[p].x - Scalar(1) : bp_[p].x;
        Scalar xn = next_x(bp_, i);
        const Scalar& vn = bp_[(i + 1) % m].v;
        Scalar lhs = (bp_[i].v - bp_[p].v) * (xn - bp_[i].x);
        Scalar rhs = (vn - bp_[i].v) * (bp_[i].x - xp);
        keep[i] = lhs != rhs;
        any = any || keep[i];
    }
    if (!any) {
        Scalar c = bp_[0].v;
        bp_ = {{Scalar(0), c}};
        return;
    }
    std::vector<Breakpoint> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        if (keep[i]) out.push_back(std::move(bp_[i]));
    bp_ = std::move(out);
}

std::size_t PLFunction::segment_of(const Scalar& x) const {
    auto it = std::upper_bound(bp_.begin(), bp_.end(), x,
                               [](const Scalar& a, const Breakpoint& b) { return compare(a, b.x) < 0; });
    if (it == bp_.begin()) return bp_.size() - 1;
    return static_cast<std::size_t>(it - bp_.begin()) - 1;
}

Scalar PLFunction::operator()(const Scalar& x) const {
    if (bp_.size() == 1) return bp_[0].v;
    Scalar y = x.frac();
    std::size_t i = segment_of(y);
    if (compare(y, bp_[i].x) == 0) return bp_[i].v;
    if (compare(y, bp_[i].x) < 0) y += Scalar(1);
    const Scalar& v0 = bp_[i].v;
    const Scalar& v1 = bp_[(i + 1) % bp_.size()].v;
    if (v0 == v1) return v0;
    return v0 + (v1 - v0) * (y - bp_[i].x) / (next_x(bp_, i) - bp_[i].x);
}

double PLFunction::approx(double x) const {
    if (bp_.size() == 1) return bp_[0].v.approx();
    x -= std::floor(x);
    std::size_t m = bp_.size();
    std::size_t lo = 0, hi = m;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (bp_[mid].x.approx() <= x)
            lo = mid + 1;
        else
            hi = mid;
    }
    std::size_t i = lo == 0 ? m - 1 : lo - 1;
    double x0 = bp_[i].x.approx();
    double x1 = i + 1 < m ? bp_[i + 1].x.approx() : bp_[0].x.approx() + 1.0;
    if (x < x0) x += 1.0;
    double v0 = bp_[i].v.approx(), v1 = bp_[(i + 1) % m].v.approx();
    return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
}

Scalar PLFunction::slope(std::size_t i) const {
    if (bp_.size() == 1) return Scalar(0);
    const Scalar& v0 = bp_[i].v;
    const Scalar& v1 = bp_[(i + 1) % bp_.size()].v;
    if (v0 == v1) return Scalar(0);
    return (v1 - v0) / (next_x(bp_, i) - bp_[i].x);
}

PLFunction bump(const CircleSet& F, const CircleSet& W) {
    CircleSet cf = F.closure();
    if (cf.is_empty()) return PLFunction();
    if (!W.is_open()) throw Error(ErrorKind::InvalidInput, "bump needs an open W");
    if (!cf.subset_of(W)) throw Error(ErrorKind::NoGap, "closure(F) is not inside W");
    if (W.is_full()) return PLFunction::constant(Scalar(1));
    auto fcomps = cf.components();
    std::vector<Breakpoint> bps;
    for (const auto& w : W.components()) {
        bool found = false;
        Scalar a, b;
        for (const auto& c : fcomps) {
            Scalar lo = c.lo, hi = c.hi;
            if (compare(lo, w.lo) < 0) {
                lo += Scalar(1);
                hi += Scalar(1);
            }
            if (compare(lo, w.hi) >= 0) continue;
            if (!found) {
                a = lo;
                b = hi;
                found = true;
            } else {
                a = min(a, lo);
                b = max(b, hi);
            }
        }
        if (!found) continue;
        Scalar half(Scalar::rational(1, 2));
        bps.push_back({(w.lo + a) * half, Scalar(0)});
        bps.push_back({a, Scalar(1)});
        if (a != b) bps.push_back({b, Scalar(1)});
        bps.push_back({(b + w.hi) * half, Scalar(0)});
    }
    return PLFunction::from_breakpoints(std::move(bps));
}

namespace {

struct Paired {
    std::vector<Scalar> x;
    std::vector<Scalar> a, b;
};

Paired pair_up(const PLFunction& f, const PLFunction& g) {
    Paired p;
    const auto& fb = f.breakpoints();
    const auto& gb = g.breakpoints();
    std::size_t i = 0, j = 0;
    while (i < fb.size() || j < gb.size()) {
        if (j == gb.size()) {
            p.x.push_back(fb[i++].x);
        } else if (i == fb.size()) {
            p.x.push_back(gb[j++].x);
        } else {
            int c = compare(fb[i].x, gb[j].x);
            if (c <= 0) {
                p.x.push_back(fb[i++].x);
                if (c == 0) ++j;
            } else {
                p.x.push_back(gb[j++].x);
            }
        }
    }
    p.a.reserve(p.x.size());
    p.b.reserve(p.x.size());
    for (const auto& x : p.x) {
        p.a.push_back(f(x));
        p.b.push_back(g(x));
    }
    return p;
}

PLFunction lattice(const PLFunction& f, const PLFunction& g, bool take_min) {
    if (f.is_constant() && g.is_constant()) {
        const Scalar& u = f.breakpoints()[0].v;
        const Scalar& w = g.breakpoints()[0].v;
        return PLFunction::constant(take_min ? min(u, w) : max(u, w));
    }
    Paired p = pair_up(f, g);
    std::size_t m = p.x.size();
    std::vector<Breakpoint> out;
    out.reserve(2 * m);
    Breakpoint wrapped;
    bool has_wrapped = false;
    for (std::size_t k = 0; k < m; ++k) {
        const Scalar& a0 = p.a[k];
        const Scalar& b0 = p.b[k];
        bool pick_a = take_min ? compare(a0, b0) <= 0 : compare(a0, b0) >= 0;
        out.push_back({p.x[k], pick_a ? a0 : b0});
        std::size_t n = (k + 1) % m;
        Scalar d0 = a0 - b0, d1 = p.a[n] - p.b[n];
        if (d0.sign() * d1.sign() >= 0) continue;
        Scalar x1 = k + 1 < m ? p.x[n] : p.x[0] + Scalar(1);
        Scalar t = d0 / (d0 - d1);
        Scalar xc = p.x[k] + (x1 - p.x[k]) * t;
        Scalar vc = a0 + (p.a[n] - a0) * t;
        if (compare(xc, Scalar(1)) >= 0) {
            wrapped = {xc - Scalar(1), vc};
            has_wrapped = true;
        } else {
            out.push_back({xc, vc});
        }
    }
    if (has_wrapped) out.insert(out.begin(), wrapped);
    return make_sorted(std::move(out));
}

PLFunction linear(const PLFunction& f, const PLFunction& g, int sign) {
    if (f.is_constant() && g.is_constant()) {
        const Scalar& u = f.breakpoints()[0].v;
        const Scalar& w = g.breakpoints()[0].v;
        return PLFunction::constant(sign > 0 ? u + w : u - w);
    }
    Paired p = pair_up(f, g);
    std::vector<Breakpoint> out;
    out.reserve(p.x.size());
    for (std::size_t k = 0; k < p.x.size(); ++k) out.push_back({p.x[k], sign > 0 ? p.a[k] + p.b[k] : p.a[k] - p.b[k]});
    return make_sorted(std::move(out));
}

}  // namespace

PLFunction pl_combine(PLOp op, const PLFunction& a, const PLFunction& b, const Scalar& k) {
    switch (op) {
        case PLOp::Min: return lattice(a, b, true);
        case PLOp::Max: return lattice(a, b, false);
        case PLOp::Sum: return linear(a, b, 1);
        case PLOp::Difference: return linear(a, b, -1);
        case PLOp::Scale: {
            std::vector<Breakpoint> out = a.breakpoints();
            for (auto& bp : out) bp.v *= k;
            return make_sorted(std::move(out));
        }
    }
    throw Error(ErrorKind::Internal, "unknown PL operation");
}

PLFunction pl_min(const PLFunction& a, const PLFunction& b) { return pl_combine(PLOp::Min, a, b); }
PLFunction pl_max(const PLFunction& a, const PLFunction& b) { return pl_combine(PLOp::Max, a, b); }
PLFunction pl_add(const PLFunction& a, const PLFunction& b) { return pl_combine(PLOp::Sum, a, b); }
PLFunction pl_sub(const PLFunction& a, const PLFunction& b) { return pl_combine(PLOp::Difference, a, b); }
PLFunction pl_scale(const PLFunction& a, const Scalar& k) { return pl_combine(PLOp::Scale, a, PLFunction(), k); }

PLFunction pl_sum_all(std::vector<PLFunction> fs) {
    if (fs.empty()) return PLFunction();
    if (fs.size() == 1) return std::move(fs[0]);
    // Sweep over slope jumps, starting from a direct evaluation.
    struct Event {
        Scalar pos, jump;
    };
    std::vector<Event> ev;
    Scalar base(0);
    for (const auto& f : fs) {
        if (f.is_constant()) {
            base += f.breakpoints()[0].v;
            continue;
        }
        std::size_t m = f.size();
        std::vector<Scalar> sl(m);
        for (std::size_t i = 0; i < m; ++i) sl[i] = f.slope(i);
        for (std::size_t i = 0; i < m; ++i) {
            Scalar jump = sl[i] - sl[(i + m - 1) % m];
            if (!jump.is_zero()) ev.push_back({f.breakpoints()[i].x, std::move(jump)});
        }
    }
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return compare(a.pos, b.pos) < 0; });
    std::vector<Event> merged;
    for (auto& e : ev) {
        if (!merged.empty() && compare(merged.back().pos, e.pos) == 0)
            merged.back().jump += e.jump;
        else
            merged.push_back(std::move(e));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Event& e) { return e.jump.is_zero(); }),
                 merged.end());
    if (merged.empty()) {
        Scalar v = base;
        for (const auto& f : fs)
            if (!f.is_constant()) v += f(Scalar(0));
        return PLFunction::constant(v);
    }
    Scalar val = base, slope(0);
    const Scalar& x0 = merged[0].pos;
    for (const auto& f : fs) {
        if (f.is_constant()) continue;
        val += f(x0);
        slope += f.slope(f.segment_of(x0));
    }
    std::vector<Breakpoint> out;
    out.reserve(merged.size());
    out.push_back({x0, val});
    for (std::size_t k = 1; k < merged.size(); ++k) {
        val += slope * (merged[k].pos - merged[k - 1].pos);
        slope += merged[k].jump;
        out.push_back({merged[k].pos, val});
    }
    Scalar closing = val + slope * (x0 + Scalar(1) - merged.back().pos);
    if (closing != out[0].v) throw Error(ErrorKind::Internal, "sum sweep failed to close up");
    return make_sorted(std::move(out));
}

PLFunction shift_fn(const PLFunction& f, const Scalar& t) {
    if (f.is_constant()) return f;
    const auto& bp = f.breakpoints();
    std::size_t m = bp.size();
    Scalar tf = t.frac();
    std::vector<Breakpoint> moved(m);
    std::size_t start = 0;
    for (std::size_t i = 0; i < m; ++i) {
        Scalar x = bp[i].x + tf;
        if (compare(x, Scalar(1)) >= 0) x -= Scalar(1);
        moved[i] = {std::move(x), bp[i].v};
        if (i > 0 && compare(moved[i].x, moved[i - 1].x) < 0) start = i;
    }
    std::rotate(moved.begin(), moved.begin() + static_cast<long>(start), moved.end());
    return make_sorted(std::move(moved));
}

PLFunction translate_fn(const System& sys, const PLFunction& f, long n) {
    if (!sys.is_rotation()) throw Error(ErrorKind::MixedAmbient, "PL functions live on circle rotations");
    return shift_fn(f, Scalar(n) * sys.theta());
}

std::size_t breakpoint_cap() {
    if (const char* env = std::getenv("DYNCOMP_BP_CAP")) {
        try {
            long long v = std::stoll(env);
            if (v > 0) return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
        }
    }
    return 10'000'000;
}

PLFunction birkhoff_sum(const System& sys, const PLFunction& g, long N) {
    if (!sys.is_rotation()) throw Error(ErrorKind::MixedAmbient, "Birkhoff sums are implemented on circle rotations");
    if (N < 1) throw Error(ErrorKind::InvalidInput, "N must be positive");
    if (g.is_constant()) return PLFunction::constant(g.breakpoints()[0].v * Scalar(N));
    const auto& bp = g.breakpoints();
    std::size_t m = bp.size();
    if (static_cast<double>(N) * static_cast<double>(m) > static_cast<double>(breakpoint_cap()))
        throw Error(ErrorKind::BreakpointBudget,
                    "Birkhoff sum needs " + std::to_string(N * static_cast<long>(m)) + " breakpoints");
    const Scalar& theta = sys.theta();
    std::vector<Scalar> slopes(m);
    for (std::size_t i = 0; i < m; ++i) slopes[i] = g.slope(i);

    struct Event {
        Scalar pos, jump;
    };
    std::vector<Event> ev;
    ev.reserve(static_cast<std::size_t>(N) * m);
    for (std::size_t i = 0; i < m; ++i) {
        Scalar jump = slopes[i] - slopes[(i + m - 1) % m];
        if (jump.is_zero()) continue;
        Scalar pos = bp[i].x;
        for (long j = 0; j < N; ++j) {
            ev.push_back({pos, jump});
            pos -= theta;
            if (pos.sign() < 0) pos += Scalar(1);
        }
    }
    std::sort(ev.begin(), ev.end(), [](const Event& a, const Event& b) { return compare(a.pos, b.pos) < 0; });
    std::vector<Event> merged;
    merged.reserve(ev.size());
    for (auto& e : ev) {
        if (!merged.empty() && compare(merged.back().pos, e.pos) == 0)
            merged.back().jump += e.jump;
        else
            merged.push_back(std::move(e));
    }
    ev.clear();
    ev.shrink_to_fit();
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const Event& e) { return e.jump.is_zero(); }),
                 merged.end());

    auto direct = [&](const Scalar& x0, Scalar* slope_out) {
        Scalar val(0), sl(0);
        Scalar y = x0;
        for (long j = 0; j < N; ++j) {
            val += g(y);
            if (slope_out) sl += slopes[g.segment_of(y)];
            y += theta;
            if (compare(y, Scalar(1)) >= 0) y -= Scalar(1);
        }
        if (slope_out) *slope_out = sl;
        return val;
    };

    if (merged.empty()) return PLFunction::constant(direct(Scalar(0), nullptr));
    std::vector<Breakpoint> out;
    out.reserve(merged.size());
    Scalar slope;
    Scalar val = direct(merged[0].pos, &slope);
    out.push_back({merged[0].pos, val});
    for (std::size_t k = 1; k < merged.size(); ++k) {
        val += slope * (merged[k].pos - merged[k - 1].pos);
        slope += merged[k].jump;
        out.push_back({merged[k].pos, val});
    }
    Scalar closing = val + slope * (merged[0].pos + Scalar(1) - merged.back().pos);
    if (closing != out[0].v) throw Error(ErrorKind::Internal, "Birkhoff sweep failed to close up");
    return make_sorted(std::move(out));
}

Extrema global_extrema(const PLFunction& f) {
    const auto& bp = f.breakpoints();
    Extrema e{bp[0].v, bp[0].v, bp[0].x};
    for (const auto& b : bp) {
        if (compare(b.v, e.min) < 0) {
            e.min = b.v;
            e.argmin = b.x;
        }
        if (compare(b.v, e.max) > 0) e.max = b.v;
    }
    return e;
}

Extrema extrema_on(const PLFunction& f, const CircleSet& R) {
    CircleSet cl = R.closure();
    if (cl.is_empty()) throw Error(ErrorKind::EmptyInput, "extrema over the empty set");
    if (cl.is_full()) return global_extrema(f);
    bool first = true;
    Extrema e;
    auto take = [&](const Scalar& x, const Scalar& v) {
        if (first || compare(v, e.min) < 0) {
            e.min = v;
            e.argmin = x;
        }
        if (first || compare(v, e.max) > 0) e.max = v;
        first = false;
    };
    for (const auto& x : cl.boundary_points()) take(x, f(x));
    for (const auto& b : f.breakpoints())
        if (cl.contains(b.x)) take(b.x, b.v);
    return e;
}

Scalar integral(const PLFunction& f) {
    const auto& bp = f.breakpoints();
    if (bp.size() == 1) return bp[0].v;
    Scalar twice(0);
    for (std::size_t i = 0; i < bp.size(); ++i)
        twice += (next_x(bp, i) - bp[i].x) * (bp[i].v + bp[(i + 1) % bp.size()].v);
    return twice * Scalar::rational(1, 2);
}

Scalar integral(const System& sys, const PLFunction& f) {
    if (!sys.is_rotation()) throw Error(ErrorKind::MixedAmbient, "integral is implemented on circle rotations");
    return integral(f);
}

SupportReport support(const PLFunction& f) {
    SupportReport r;
    const auto& bp = f.breakpoints();
    if (f.is_constant()) {
        if (!bp[0].v.is_zero()) r.support = CircleSet::full();
        if (bp[0].v == Scalar(1)) r.one_set = CircleSet::full();
        return r;
    }
    std::size_t m = bp.size();
    std::vector<Scalar> xs(m);
    std::vector<char> at(m), after(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = bp[i].x;
        after[i] = !(bp[i].v.is_zero() && bp[(i + 1) % m].v.is_zero());
    }
    for (std::size_t i = 0; i < m; ++i) at[i] = !bp[i].v.is_zero() || after[i] || after[(i + m - 1) % m];
    r.support = CircleSet::from_elements(xs, at, after);

    std::vector<Scalar> ox;
    std::vector<char> oat, oafter;
    Scalar one(1);
    Breakpoint wrapped;
    bool has_wrapped = false;
    for (std::size_t i = 0; i < m; ++i) {
        const Scalar& v0 = bp[i].v;
        const Scalar& v1 = bp[(i + 1) % m].v;
        ox.push_back(bp[i].x);
        oat.push_back(v0 == one);
        oafter.push_back(v0 == one && v1 == one);
        Scalar d0 = v0 - one, d1 = v1 - one;
        if (d0.sign() * d1.sign() < 0) {
            Scalar xc = bp[i].x + (next_x(bp, i) - bp[i].x) * d0 / (d0 - d1);
            if (compare(xc, one) >= 0) {
                wrapped = {xc - one, one};
                has_wrapped = true;
            } else {
                ox.push_back(xc);
                oat.push_back(1);
                oafter.push_back(0);
            }
        }
    }
    if (has_wrapped) {
        ox.insert(ox.begin(), wrapped.x);
        oat.insert(oat.begin(), 1);
        oafter.insert(oafter.begin(), 0);
    }
    r.one_set = CircleSet::from_elements(std::move(ox), std::move(oat), std::move(oafter));
    return r;
}

CircleSet support_set(const PLFunction& f) { return support(f).support; }

namespace {

struct ApproxPiece {
    double lo, hi;
    std::size_t owner;
};

// Double-precision cover of supp(f), widened slightly so it is conservative.
std::vector<std::pair<double, double>> approx_support(const PLFunction& f) {
    std::vector<std::pair<double, double>> out;
    const auto& bp = f.breakpoints();
    if (f.is_constant()) {
        if (!bp[0].v.is_zero()) out.push_back({-1.0, 2.0});
        return out;
    }
    constexpr double tol = 1e-9;
    std::size_t m = bp.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (bp[i].v.is_zero() && bp[(i + 1) % m].v.is_zero()) continue;
        double lo = bp[i].x.approx() - tol;
        double hi = (i + 1 < m ? bp[i + 1].x.approx() : bp[0].x.approx() + 1.0) + tol;
        if (!out.empty() && out.back().second >= lo)
            out.back().second = hi;
        else
            out.push_back({lo, hi});
    }
    // Split at the wrap so that every piece is inside [-tol, 1 + tol].
    std::vector<std::pair<double, double>> split;
    for (auto [lo, hi] : out) {
        if (hi > 1.0) {
            split.push_back({lo, 1.0 + tol});
            split.push_back({-tol, hi - 1.0});
        } else {
            split.push_back({lo, hi});
        }
    }
    return split;
}

}  // namespace

std::vector<PLFunction> min_cascade(const std::vector<PLFunction>& g) {
    std::vector<ApproxPiece> pieces;
    std::vector<std::vector<std::pair<double, double>>> supp(g.size());
    double maxlen = 0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        supp[j] = approx_support(g[j]);
        for (auto [lo, hi] : supp[j]) {
            pieces.push_back({lo, hi, j});
            maxlen = std::max(maxlen, hi - lo);
        }
    }
    std::sort(pieces.begin(), pieces.end(), [](const ApproxPiece& a, const ApproxPiece& b) { return a.lo < b.lo; });
    std::vector<PLFunction> f(g.size());
    PLFunction one = PLFunction::constant(Scalar(1));
    for (std::size_t j = 0; j < g.size(); ++j) {
        std::vector<std::size_t> earlier;
        for (auto [lo, hi] : supp[j]) {
            auto it = std::lower_bound(pieces.begin(), pieces.end(), lo - maxlen,
                                       [](const ApproxPiece& p, double v) { return p.lo < v; });
            for (; it != pieces.end() && it->lo <= hi; ++it)
                if (it->owner < j && it->hi >= lo) earlier.push_back(it->owner);
        }
        std::sort(earlier.begin(), earlier.end());
        earlier.erase(std::unique(earlier.begin(), earlier.end()), earlier.end());
        PLFunction partial;
        for (auto i : earlier) partial = pl_add(partial, f[i]);
        f[j] = pl_min(g[j], pl_sub(one, partial));
    }
    return f;
}

std::vector<PLFunction> partition_of_unity(const std::vector<std::pair<CircleSet, CircleSet>>& pairs,
                                           const CircleSet& C) {
    CircleSet cover;
    std::vector<PLFunction> g;
    g.reserve(pairs.size());
    for (const auto& [F, W] : pairs) {
        cover = cover.unite(F);
        g.push_back(bump(F, W));
    }
    if (!C.subset_of(cover)) throw Error(ErrorKind::CoverFailure, "C is not covered by the closed sets");
    return min_cascade(g);
}

}  // namespace dyncomp
