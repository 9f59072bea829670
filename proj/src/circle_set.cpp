#include "dyncomp/error.hpp"
#include "dyncomp/regions.hpp"

#include <algorithm>
#include <sstream>

namespace dyncomp {

namespace {

Scalar wrap01(Scalar s) {
    if (compare(s, Scalar(1)) >= 0) s -= Scalar(1);
    return s;
}

}  // namespace

CircleSet CircleSet::full() {
    CircleSet s;
    s.full_ = true;
    return s;
}

CircleSet CircleSet::arc(const Scalar& lo, const Scalar& hi, bool lo_closed, bool hi_closed) {
    Scalar len = hi - lo;
    int c0 = len.sign();
    int c1 = compare(len, Scalar(1));
    if (c0 < 0 || c1 > 0) throw Error(ErrorKind::InvalidInput, "arc length must lie in [0,1]");
    CircleSet s;
    if (c0 == 0) {
        if (lo_closed && hi_closed) {
            s.p_ = {lo.frac()};
            s.ip_ = {1};
            s.ig_ = {0};
        }
        return s;
    }
    Scalar l = lo.frac();
    if (c1 == 0) {
        if (lo_closed || hi_closed) return full();
        s.p_ = {l};
        s.ip_ = {0};
        s.ig_ = {1};
        return s;
    }
    Scalar h = hi.frac();
    if (compare(l, h) < 0) {
        s.p_ = {l, h};
        s.ip_ = {static_cast<char>(lo_closed), static_cast<char>(hi_closed)};
        s.ig_ = {1, 0};
    } else {
        s.p_ = {h, l};
        s.ip_ = {static_cast<char>(hi_closed), static_cast<char>(lo_closed)};
        s.ig_ = {0, 1};
    }
    s.canonicalize();
    return s;
}

CircleSet CircleSet::points(std::vector<Scalar> xs) {
    for (auto& x : xs) x = x.frac();
    std::sort(xs.begin(), xs.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });
    xs.erase(std::unique(xs.begin(), xs.end(), [](const Scalar& a, const Scalar& b) { return compare(a, b) == 0; }),
             xs.end());
    CircleSet s;
    s.p_ = std::move(xs);
    s.ip_.assign(s.p_.size(), 1);
    s.ig_.assign(s.p_.size(), 0);
    return s;
}

CircleSet CircleSet::from_elements(std::vector<Scalar> pts, std::vector<char> at, std::vector<char> after) {
    if (at.size() != pts.size() || after.size() != pts.size())
        throw Error(ErrorKind::InvalidInput, "flag count mismatch");
    for (std::size_t i = 0; i < pts.size(); ++i) {
        bool bad = pts[i].sign() < 0 || compare(pts[i], Scalar(1)) >= 0 || (i > 0 && compare(pts[i - 1], pts[i]) >= 0);
        if (bad) throw Error(ErrorKind::InvalidInput, "points must be sorted and distinct in [0,1)");
    }
    CircleSet s;
    s.p_ = std::move(pts);
    s.ip_ = std::move(at);
    s.ig_ = std::move(after);
    s.canonicalize();
    return s;
}

void CircleSet::canonicalize() {
    std::size_t m = p_.size();
    if (m == 0) return;
    std::vector<char> keep(m);
    bool any = false;
    for (std::size_t i = 0; i < m; ++i) {
        char prev = ig_[(i + m - 1) % m];
        keep[i] = !(ip_[i] == prev && ip_[i] == ig_[i]);
        any = any || keep[i];
    }
    if (!any) {
        full_ = ig_[0] != 0;
        p_.clear();
        ip_.clear();
        ig_.clear();
        return;
    }
    bool all = std::all_of(keep.begin(), keep.end(), [](char k) { return k != 0; });
    if (all) return;
    std::vector<Scalar> np;
    std::vector<char> nip, nig;
    for (std::size_t i = 0; i < m; ++i) {
        if (!keep[i]) continue;
        np.push_back(std::move(p_[i]));
        nip.push_back(ip_[i]);
        nig.push_back(ig_[i]);
    }
    p_ = std::move(np);
    ip_ = std::move(nip);
    ig_ = std::move(nig);
}

void CircleSet::flags_on(const std::vector<Scalar>& pts, std::vector<char>& at, std::vector<char>& after) const {
    at.assign(pts.size(), full_ ? 1 : 0);
    after.assign(pts.size(), full_ ? 1 : 0);
    std::size_t m = p_.size();
    if (m == 0) return;
    std::size_t j = 0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        if (j < m && compare(p_[j], pts[k]) == 0) {
            at[k] = ip_[j];
            after[k] = ig_[j];
            ++j;
        } else {
            std::size_t g = j == 0 ? m - 1 : j - 1;
            at[k] = ig_[g];
            after[k] = ig_[g];
        }
    }
}

template <class Op>
CircleSet CircleSet::combine(const CircleSet& x, const CircleSet& y, Op op) {
    std::vector<Scalar> merged;
    merged.reserve(x.p_.size() + y.p_.size());
    std::size_t i = 0, j = 0;
    while (i < x.p_.size() || j < y.p_.size()) {
        if (j == y.p_.size()) {
            merged.push_back(x.p_[i++]);
        } else if (i == x.p_.size()) {
            merged.push_back(y.p_[j++]);
        } else {
            int c = compare(x.p_[i], y.p_[j]);
            if (c < 0) {
                merged.push_back(x.p_[i++]);
            } else if (c > 0) {
                merged.push_back(y.p_[j++]);
            } else {
                merged.push_back(x.p_[i++]);
                ++j;
            }
        }
    }
    CircleSet r;
    if (merged.empty()) {
        r.full_ = op(x.full_, y.full_);
        return r;
    }
    std::vector<char> ax, bx, ay, by;
    x.flags_on(merged, ax, bx);
    y.flags_on(merged, ay, by);
    r.p_ = std::move(merged);
    r.ip_.resize(r.p_.size());
    r.ig_.resize(r.p_.size());
    for (std::size_t k = 0; k < r.p_.size(); ++k) {
        r.ip_[k] = op(ax[k] != 0, ay[k] != 0) ? 1 : 0;
        r.ig_[k] = op(bx[k] != 0, by[k] != 0) ? 1 : 0;
    }
    r.canonicalize();
    return r;
}

CircleSet CircleSet::unite(const CircleSet& o) const {
    return combine(*this, o, [](bool a, bool b) { return a || b; });
}
CircleSet CircleSet::intersect(const CircleSet& o) const {
    return combine(*this, o, [](bool a, bool b) { return a && b; });
}
CircleSet CircleSet::minus(const CircleSet& o) const {
    return combine(*this, o, [](bool a, bool b) { return a && !b; });
}

CircleSet CircleSet::complement() const {
    CircleSet r = *this;
    r.full_ = p_.empty() && !full_;
    for (auto& v : r.ip_) v = !v;
    for (auto& v : r.ig_) v = !v;
    return r;
}

CircleSet CircleSet::closure() const {
    CircleSet r = *this;
    std::size_t m = p_.size();
    for (std::size_t i = 0; i < m; ++i) r.ip_[i] = ip_[i] || ig_[(i + m - 1) % m] || ig_[i];
    r.canonicalize();
    return r;
}

CircleSet CircleSet::interior() const {
    CircleSet r = *this;
    std::size_t m = p_.size();
    for (std::size_t i = 0; i < m; ++i) r.ip_[i] = ip_[i] && ig_[(i + m - 1) % m] && ig_[i];
    r.canonicalize();
    return r;
}

bool CircleSet::is_closed() const {
    std::size_t m = p_.size();
    for (std::size_t i = 0; i < m; ++i)
        if (!ip_[i] && (ig_[(i + m - 1) % m] || ig_[i])) return false;
    return true;
}

bool CircleSet::is_open() const {
    std::size_t m = p_.size();
    for (std::size_t i = 0; i < m; ++i)
        if (ip_[i] && !(ig_[(i + m - 1) % m] && ig_[i])) return false;
    return true;
}

bool CircleSet::is_finite() const {
    if (full_) return false;
    return std::none_of(ig_.begin(), ig_.end(), [](char g) { return g != 0; });
}

bool CircleSet::contains(const Scalar& x) const {
    if (p_.empty()) return full_;
    Scalar xf = x.frac();
    auto it = std::upper_bound(p_.begin(), p_.end(), xf,
                               [](const Scalar& a, const Scalar& b) { return compare(a, b) < 0; });
    if (it == p_.begin()) return ig_.back() != 0;
    std::size_t i = static_cast<std::size_t>(it - p_.begin()) - 1;
    if (compare(p_[i], xf) == 0) return ip_[i] != 0;
    return ig_[i] != 0;
}

bool CircleSet::subset_of(const CircleSet& o) const { return minus(o).is_empty(); }
bool CircleSet::disjoint(const CircleSet& o) const { return intersect(o).is_empty(); }

Scalar CircleSet::measure() const {
    if (p_.empty()) return Scalar(full_ ? 1 : 0);
    Scalar total(0);
    std::size_t m = p_.size();
    for (std::size_t i = 0; i < m; ++i) {
        if (!ig_[i]) continue;
        if (i + 1 < m)
            total += p_[i + 1] - p_[i];
        else
            total += p_[0] + Scalar(1) - p_[i];
    }
    return total;
}

CircleSet CircleSet::translate(const Scalar& t) const {
    if (p_.empty()) return *this;
    Scalar tf = t.frac();
    std::size_t m = p_.size();
    std::vector<Scalar> np(m);
    std::size_t start = 0;
    for (std::size_t i = 0; i < m; ++i) {
        np[i] = wrap01(p_[i] + tf);
        if (i > 0 && compare(np[i], np[i - 1]) < 0) start = i;
    }
    CircleSet r;
    r.p_.reserve(m);
    r.ip_.reserve(m);
    r.ig_.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        std::size_t i = (start + k) % m;
        r.p_.push_back(std::move(np[i]));
        r.ip_.push_back(ip_[i]);
        r.ig_.push_back(ig_[i]);
    }
    return r;
}

std::vector<CircleSet::Arc> CircleSet::components() const {
    std::vector<Arc> out;
    std::size_t m = p_.size();
    if (m == 0) return out;
    std::size_t n = 2 * m;  // element 2i = point i, 2i+1 = gap after point i
    auto in = [&](std::size_t e) { return (e % 2 == 0 ? ip_[e / 2] : ig_[e / 2]) != 0; };
    std::size_t s = 0;
    while (s < n && in(s)) ++s;
    if (s == n) return out;  // unreachable in canonical form
    std::size_t k = 1;
    while (k <= n) {
        std::size_t e = (s + k) % n;
        if (!in(e)) {
            ++k;
            continue;
        }
        std::size_t first = e, last = e;
        while (k + 1 <= n && in((s + k + 1) % n)) {
            ++k;
            last = (s + k) % n;
        }
        ++k;
        Arc a;
        a.lo = p_[first / 2];
        a.lo_closed = first % 2 == 0;
        if (last % 2 == 0) {
            a.hi = p_[last / 2];
            a.hi_closed = true;
            if (compare(a.hi, a.lo) < 0) a.hi += Scalar(1);
        } else {
            a.hi = p_[(last / 2 + 1) % m];
            a.hi_closed = false;
            if (compare(a.hi, a.lo) <= 0) a.hi += Scalar(1);
        }
        out.push_back(std::move(a));
    }
    std::sort(out.begin(), out.end(), [](const Arc& x, const Arc& y) { return compare(x.lo, y.lo) < 0; });
    return out;
}

std::size_t CircleSet::piece_count() const {
    if (is_full()) return 1;
    return components().size();
}

std::vector<CircleSet::Arc> CircleSet::pieces() const {
    std::vector<Arc> out;
    if (is_full()) {
        out.push_back(Arc{Scalar(0), Scalar(1), true, true});
        return out;
    }
    for (auto& a : components()) {
        if (compare(a.hi, Scalar(1)) <= 0) {
            out.push_back(a);
            continue;
        }
        out.push_back(Arc{a.lo, Scalar(1), a.lo_closed, false});
        out.push_back(Arc{Scalar(0), a.hi - Scalar(1), true, a.hi_closed});
    }
    std::sort(out.begin(), out.end(), [](const Arc& x, const Arc& y) { return compare(x.lo, y.lo) < 0; });
    return out;
}

std::vector<Scalar> CircleSet::finite_points() const {
    if (!is_finite()) throw Error(ErrorKind::InvalidInput, "set is not a finite point set");
    return p_;
}

std::string CircleSet::str() const {
    if (is_empty()) return "{}";
    std::ostringstream os;
    bool first = true;
    for (const auto& a : pieces()) {
        if (!first) os << " u ";
        first = false;
        if (compare(a.lo, a.hi) == 0) {
            os << "{" << a.lo << "}";
            continue;
        }
        os << (a.lo_closed ? "[" : "(") << a.lo << ", " << a.hi << (a.hi_closed ? "]" : ")");
    }
    return os.str();
}

bool operator==(const CircleSet& x, const CircleSet& y) {
    return x.full_ == y.full_ && x.p_ == y.p_ && x.ip_ == y.ip_ && x.ig_ == y.ig_;
}

CircleSet unite_all(std::vector<CircleSet> sets) {
    if (sets.empty()) return CircleSet();
    while (sets.size() > 1) {
        std::vector<CircleSet> next;
        next.reserve(sets.size() / 2 + 1);
        for (std::size_t i = 0; i + 1 < sets.size(); i += 2) next.push_back(sets[i].unite(sets[i + 1]));
        if (sets.size() % 2) next.push_back(std::move(sets.back()));
        sets = std::move(next);
    }
    return std::move(sets[0]);
}

Scalar circle_distance(const CircleSet& a, const CircleSet& b) {
    if (a.is_empty() || b.is_empty()) throw Error(ErrorKind::EmptyInput, "distance to an empty set");
    if (a.is_full() || b.is_full() || !a.closure().disjoint(b.closure())) return Scalar(0);
    struct Tagged {
        CircleSet::Arc arc;
        int owner;
    };
    std::vector<Tagged> all;
    for (auto& c : a.closure().components()) all.push_back({c, 0});
    for (auto& c : b.closure().components()) all.push_back({c, 1});
    std::sort(all.begin(), all.end(),
              [](const Tagged& x, const Tagged& y) { return compare(x.arc.lo, y.arc.lo) < 0; });
    Scalar best(1);
    for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& cur = all[i];
        const auto& nxt = all[(i + 1) % all.size()];
        if (cur.owner == nxt.owner) continue;
        Scalar gap = nxt.arc.lo - cur.arc.hi;
        if (i + 1 == all.size()) gap += Scalar(1);
        best = min(best, gap);
    }
    return best;
}

Scalar distance_to_complement(const Scalar& x, const CircleSet& U) {
    if (U.is_full()) throw Error(ErrorKind::InvalidInput, "complement is empty");
    Scalar xf = x.frac();
    for (const auto& a : U.components()) {
        for (int shift = 0; shift <= 1; ++shift) {
            Scalar y = xf + Scalar(shift);
            int l = compare(y, a.lo), h = compare(y, a.hi);
            if (l >= 0 && h <= 0) {
                if ((l == 0 && !a.lo_closed) || (h == 0 && !a.hi_closed)) continue;
                return min(y - a.lo, a.hi - y);
            }
        }
    }
    throw Error(ErrorKind::PointOutside, "point not in set");
}

}  // namespace dyncomp
