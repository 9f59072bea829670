#include "dyncomp/regions.hpp"

#include "dyncomp/error.hpp"

#include <sstream>

namespace dyncomp {

// ---- CylSet ----

CylSet CylSet::of(std::int64_t K, const std::vector<std::int64_t>& idx) {
    CylSet s(K);
    for (auto i : idx) {
        if (i < 0 || i >= K) throw Error(ErrorKind::InvalidInput, "cylinder index out of range");
        s.set(i);
    }
    return s;
}

CylSet CylSet::full(std::int64_t K) {
    CylSet s(K);
    std::fill(s.mask_.begin(), s.mask_.end(), 1);
    return s;
}

std::int64_t CylSet::count() const {
    return std::count(mask_.begin(), mask_.end(), 1);
}

std::vector<std::int64_t> CylSet::indices() const {
    std::vector<std::int64_t> out;
    for (std::size_t i = 0; i < mask_.size(); ++i)
        if (mask_[i]) out.push_back(static_cast<std::int64_t>(i));
    return out;
}

namespace {

void same_K(const CylSet& a, const CylSet& b) {
    if (a.K() != b.K()) throw Error(ErrorKind::MixedAmbient, "cylinder sets at different levels");
}

}  // namespace

CylSet CylSet::unite(const CylSet& o) const {
    same_K(*this, o);
    CylSet r(K());
    for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] | o.mask_[i];
    return r;
}

CylSet CylSet::intersect(const CylSet& o) const {
    same_K(*this, o);
    CylSet r(K());
    for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] & o.mask_[i];
    return r;
}

CylSet CylSet::minus(const CylSet& o) const {
    same_K(*this, o);
    CylSet r(K());
    for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = mask_[i] & !o.mask_[i];
    return r;
}

CylSet CylSet::complement() const {
    CylSet r(K());
    for (std::size_t i = 0; i < mask_.size(); ++i) r.mask_[i] = !mask_[i];
    return r;
}

bool CylSet::subset_of(const CylSet& o) const { return minus(o).is_empty(); }
bool CylSet::disjoint(const CylSet& o) const { return intersect(o).is_empty(); }

CylSet CylSet::translate(std::int64_t n) const {
    std::int64_t k = K();
    CylSet r(k);
    if (k == 0) return r;
    std::int64_t s = ((n % k) + k) % k;
    for (std::int64_t i = 0; i < k; ++i) r.mask_[static_cast<std::size_t>((i + s) % k)] = mask_[static_cast<std::size_t>(i)];
    return r;
}

std::string CylSet::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto i : indices()) {
        if (!first) os << ",";
        first = false;
        os << i;
    }
    os << "}";
    return os.str();
}

// ---- Region ----

const CircleSet& Region::circle() const {
    if (auto p = std::get_if<CircleSet>(&data_)) return *p;
    throw Error(ErrorKind::MixedAmbient, "region is not a circle region");
}

const TorusSet& Region::torus() const {
    if (auto p = std::get_if<TorusSet>(&data_)) return *p;
    throw Error(ErrorKind::MixedAmbient, "region is not a torus region");
}

const CylSet& Region::cyl() const {
    if (auto p = std::get_if<CylSet>(&data_)) return *p;
    throw Error(ErrorKind::MixedAmbient, "region is not a cylinder region");
}

bool Region::is_empty() const {
    return std::visit([](const auto& s) { return s.is_empty(); }, data_);
}

std::string Region::str() const {
    return std::visit([](const auto& s) { return s.str(); }, data_);
}

Region whole_space(const System& sys) {
    if (sys.is_odometer()) return CylSet::full(sys.K());
    if (sys.is_torus()) return TorusSet::full(sys.dim());
    return CircleSet::full();
}

Region empty_region(const System& sys) {
    if (sys.is_odometer()) return CylSet(sys.K());
    if (sys.is_torus()) return TorusSet(sys.dim());
    return CircleSet();
}

void check_ambient(const System& sys, const Region& r) {
    bool ok = false;
    switch (r.kind()) {
        case AmbientKind::Circle: ok = sys.is_rotation(); break;
        case AmbientKind::Torus: ok = sys.is_torus() && r.torus().dim() == sys.dim(); break;
        case AmbientKind::Cylinders: ok = sys.is_odometer() && r.cyl().K() == sys.K(); break;
    }
    if (!ok) throw Error(ErrorKind::MixedAmbient, "region does not live on the system's space");
}

Region region_algebra(SetOp op, const Region& a, const Region& b) {
    bool binary = op == SetOp::Union || op == SetOp::Intersect || op == SetOp::Minus;
    if (binary && a.kind() != b.kind()) throw Error(ErrorKind::MixedAmbient, "operands live on different spaces");
    switch (a.kind()) {
        case AmbientKind::Circle: {
            const auto& x = a.circle();
            switch (op) {
                case SetOp::Union: return x.unite(b.circle());
                case SetOp::Intersect: return x.intersect(b.circle());
                case SetOp::Minus: return x.minus(b.circle());
                case SetOp::Complement: return x.complement();
                case SetOp::Closure: return x.closure();
                case SetOp::Interior: return x.interior();
            }
            break;
        }
        case AmbientKind::Torus: {
            const auto& x = a.torus();
            switch (op) {
                case SetOp::Union: return x.unite(b.torus());
                case SetOp::Intersect: return x.intersect(b.torus());
                case SetOp::Minus: return x.minus(b.torus());
                case SetOp::Complement: return x.complement();
                case SetOp::Closure: return x.closure();
                case SetOp::Interior: return x.interior();
            }
            break;
        }
        case AmbientKind::Cylinders: {
            const auto& x = a.cyl();
            switch (op) {
                case SetOp::Union: return x.unite(b.cyl());
                case SetOp::Intersect: return x.intersect(b.cyl());
                case SetOp::Minus: return x.minus(b.cyl());
                case SetOp::Complement: return x.complement();
                case SetOp::Closure:
                case SetOp::Interior: return x;
            }
            break;
        }
    }
    throw Error(ErrorKind::Internal, "unhandled set operation");
}

BoundaryReport boundary(const Region& r) {
    BoundaryReport rep;
    switch (r.kind()) {
        case AmbientKind::Circle:
            rep.points = r.circle().boundary_points();
            rep.is_empty = rep.points.empty();
            break;
        case AmbientKind::Torus:
            rep.faces = r.torus().boundary();
            rep.is_empty = rep.faces.is_empty();
            break;
        case AmbientKind::Cylinders:
            break;
    }
    return rep;
}

Region translate_region(const System& sys, const Region& r, long n) {
    check_ambient(sys, r);
    switch (r.kind()) {
        case AmbientKind::Circle: return r.circle().translate(Scalar(n) * sys.theta());
        case AmbientKind::Torus: {
            std::vector<Scalar> shift;
            for (const auto& t : sys.thetas()) shift.push_back(Scalar(n) * t);
            return r.torus().translate(shift);
        }
        case AmbientKind::Cylinders: return r.cyl().translate(n);
    }
    throw Error(ErrorKind::Internal, "unknown region kind");
}

Scalar measure(const System& sys, const Region& r) {
    check_ambient(sys, r);
    switch (r.kind()) {
        case AmbientKind::Circle: return r.circle().measure();
        case AmbientKind::Torus: return r.torus().measure();
        case AmbientKind::Cylinders:
            return Scalar::rational(mpz_class(static_cast<long>(r.cyl().count())), mpz_class(static_cast<long>(sys.K())));
    }
    throw Error(ErrorKind::Internal, "unknown region kind");
}

Scalar measure_gap(const System& sys, const Region& C, const Region& U) { return measure(sys, U) - measure(sys, C); }

Region small_nbhd(const System& sys, const Region& F, const Scalar& eps) {
    check_ambient(sys, F);
    if (eps.sign() <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
    if (F.kind() == AmbientKind::Cylinders) {
        if (!F.is_empty()) throw Error(ErrorKind::NotNull, "non-empty clopen set has positive measure");
        return F;
    }
    if (F.kind() != AmbientKind::Circle) throw Error(ErrorKind::InvalidInput, "small_nbhd is implemented on the circle");
    const auto& f = F.circle();
    if (!f.is_empty() && !f.is_finite()) throw Error(ErrorKind::NotNull, "F has positive measure");
    if (f.is_empty()) {
        Scalar r = min(eps / Scalar(4), Scalar::rational(1, 4));
        return CircleSet::open_arc(-r, r);
    }
    const auto& pts = f.boundary_points();
    Scalar r = eps / Scalar(static_cast<long>(4 * pts.size()));
    if (compare(r, Scalar::rational(1, 4)) > 0) r = Scalar::rational(1, 4);
    CircleSet out;
    for (const auto& x : pts) out = out.unite(CircleSet::open_arc(x - r, x + r));
    if (compare(out.measure(), eps) >= 0) throw Error(ErrorKind::Internal, "small_nbhd measure check failed");
    return out;
}

Region inner_approx(const System& sys, const Region& U, const Scalar& eps) {
    check_ambient(sys, U);
    if (eps.sign() <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
    if (U.is_empty()) throw Error(ErrorKind::EmptyInput, "inner approximation of the empty set");
    if (U.kind() == AmbientKind::Cylinders) return U;
    if (U.kind() != AmbientKind::Circle) throw Error(ErrorKind::InvalidInput, "inner_approx is implemented on the circle");
    const auto& u = U.circle();
    if (!u.is_open()) throw Error(ErrorKind::InvalidInput, "inner_approx needs an open set");
    if (u.is_full()) return U;
    auto comps = u.components();
    Scalar budget = eps / Scalar(static_cast<long>(4 * comps.size()));
    CircleSet K;
    for (const auto& a : comps) {
        Scalar r = min(budget, a.length() / Scalar(8));
        K = K.unite(CircleSet::closed_arc(a.lo + r, a.hi - r));
    }
    if (!K.subset_of(u) || compare(u.measure() - K.measure(), eps) >= 0)
        throw Error(ErrorKind::Internal, "inner_approx self-check failed");
    return K;
}

Region outer_approx(const System& sys, const Region& F, const Scalar& eps) {
    check_ambient(sys, F);
    if (eps.sign() <= 0) throw Error(ErrorKind::InvalidInput, "epsilon must be positive");
    if (F.kind() == AmbientKind::Cylinders) return F;
    if (F.kind() != AmbientKind::Circle) throw Error(ErrorKind::InvalidInput, "outer_approx is implemented on the circle");
    const auto& f = F.circle();
    if (!f.is_closed()) throw Error(ErrorKind::InvalidInput, "outer_approx needs a closed set");
    if (f.is_empty() || f.is_full()) return F;
    auto comps = f.components();
    std::size_t p = comps.size();
    Scalar budget = eps / Scalar(static_cast<long>(4 * p));
    std::vector<Scalar> gap_after(p);
    for (std::size_t i = 0; i < p; ++i) {
        const auto& nxt = comps[(i + 1) % p];
        gap_after[i] = nxt.lo - comps[i].hi;
        if (i + 1 == p) gap_after[i] += Scalar(1);
    }
    CircleSet E;
    for (std::size_t i = 0; i < p; ++i) {
        Scalar left = min(budget, gap_after[(i + p - 1) % p] / Scalar(8));
        Scalar right = min(budget, gap_after[i] / Scalar(8));
        E = E.unite(CircleSet::open_arc(comps[i].lo - left, comps[i].hi + right));
    }
    if (!f.subset_of(E) || compare(E.measure() - f.measure(), eps) >= 0)
        throw Error(ErrorKind::Internal, "outer_approx self-check failed");
    return E;
}

}  // namespace dyncomp
