#pragma once

#include "dyncomp/scalar.hpp"
#include "dyncomp/systems.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace dyncomp {

// A finite union of arcs of the circle R/Z.
//
// Stored canonically as the sorted boundary points p_0 < ... < p_{m-1} in
// [0,1) with one membership flag per point and one per open gap
// (p_i, p_{i+1}) (the last gap wraps to p_0 + 1). A point is kept only if
// its flag differs from one of its neighbouring gaps, so the stored points
// are exactly the topological boundary. With no points the set is empty or
// the full circle.
class CircleSet {
public:
    // A connected component, unwrapped: lo in [0,1) and lo <= hi <= lo + 1.
    struct Arc {
        Scalar lo, hi;
        bool lo_closed = true, hi_closed = true;
        Scalar length() const { return hi - lo; }
    };

    CircleSet() = default;
    static CircleSet empty() { return CircleSet(); }
    static CircleSet full();
    // Arc from lo to hi (0 <= hi - lo <= 1); endpoints are taken mod 1.
    static CircleSet arc(const Scalar& lo, const Scalar& hi, bool lo_closed, bool hi_closed);
    static CircleSet closed_arc(const Scalar& lo, const Scalar& hi) { return arc(lo, hi, true, true); }
    static CircleSet open_arc(const Scalar& lo, const Scalar& hi) { return arc(lo, hi, false, false); }
    static CircleSet point(const Scalar& x) { return arc(x, x, true, true); }
    static CircleSet points(std::vector<Scalar> xs);
    // Bulk constructor from sorted distinct points in [0,1) with a flag for
    // each point and for the gap following it.
    static CircleSet from_elements(std::vector<Scalar> pts, std::vector<char> at, std::vector<char> after);

    bool is_empty() const { return p_.empty() && !full_; }
    bool is_full() const { return p_.empty() && full_; }
    bool is_closed() const;
    bool is_open() const;
    // True when the set is a finite set of points.
    bool is_finite() const;

    const std::vector<Scalar>& boundary_points() const { return p_; }
    bool point_in(std::size_t i) const { return ip_[i] != 0; }
    bool gap_in(std::size_t i) const { return ig_[i] != 0; }

    bool contains(const Scalar& x) const;

    CircleSet unite(const CircleSet& o) const;
    CircleSet intersect(const CircleSet& o) const;
    CircleSet minus(const CircleSet& o) const;
    CircleSet complement() const;
    CircleSet closure() const;
    CircleSet interior() const;
    bool subset_of(const CircleSet& o) const;
    bool disjoint(const CircleSet& o) const;

    Scalar measure() const;
    CircleSet translate(const Scalar& t) const;

    // Components in cyclic order starting from the smallest lo. Empty for
    // the empty set and for the full circle.
    std::vector<Arc> components() const;
    std::size_t piece_count() const;
    // Components split at 0 so that 0 <= lo <= hi <= 1; for the full circle
    // a single closed piece [0, 1].
    std::vector<Arc> pieces() const;
    // Finite sets only.
    std::vector<Scalar> finite_points() const;

    std::string str() const;

    friend bool operator==(const CircleSet& x, const CircleSet& y);

private:
    template <class Op>
    static CircleSet combine(const CircleSet& x, const CircleSet& y, Op op);
    void canonicalize();
    // Flags of this set at each point of `pts` (a sorted superset of p_) and
    // on the gap that follows it.
    void flags_on(const std::vector<Scalar>& pts, std::vector<char>& at, std::vector<char>& after) const;

    std::vector<Scalar> p_;
    std::vector<char> ip_, ig_;
    bool full_ = false;
};

// Union of many sets by pairwise merging.
CircleSet unite_all(std::vector<CircleSet> sets);

// Closed-set distance along the circle between disjoint closed sets (both
// non-empty). Zero when they meet.
Scalar circle_distance(const CircleSet& a, const CircleSet& b);
// For x in an open set U (not the full circle): distance to the complement.
Scalar distance_to_complement(const Scalar& x, const CircleSet& U);

// A finite union of axis-aligned boxes of the d-torus, stored on the grid
// spanned by per-axis cut points. Along an axis with cuts c_0 < ... < c_{m-1},
// element 2i is the point c_i and element 2i+1 the open gap after it; an axis
// with no cuts has the single element "whole circle".
class TorusSet {
public:
    explicit TorusSet(int d = 1);
    static TorusSet full(int d);
    static TorusSet box(const std::vector<CircleSet>& factors);

    int dim() const { return d_; }
    bool is_empty() const;
    bool is_full() const;
    bool contains(const std::vector<Scalar>& x) const;

    TorusSet unite(const TorusSet& o) const;
    TorusSet intersect(const TorusSet& o) const;
    TorusSet minus(const TorusSet& o) const;
    TorusSet complement() const;
    TorusSet closure() const;
    TorusSet interior() const;
    TorusSet boundary() const;
    bool subset_of(const TorusSet& o) const;
    bool disjoint(const TorusSet& o) const;

    // Exact Lebesgue measure; throws CrossField when a cell volume multiplies
    // irrationals from different quadratic fields.
    Scalar measure() const;
    double measure_approx() const;
    TorusSet translate(const std::vector<Scalar>& shift) const;

    const std::vector<Scalar>& cuts(int axis) const { return cuts_[axis]; }
    // The member cells, each as its per-axis factors (a point, an open arc
    // or the whole circle).
    std::vector<std::vector<CircleSet>> cells() const;
    std::size_t cell_count() const { return cells_.size(); }

    std::string str() const;

    friend bool operator==(const TorusSet& x, const TorusSet& y);

private:
    std::size_t axis_size(int i) const { return cuts_[i].empty() ? 1 : 2 * cuts_[i].size(); }
    template <class Op>
    static TorusSet combine(const TorusSet& x, const TorusSet& y, Op op);
    void canonicalize();

    int d_;
    std::vector<std::vector<Scalar>> cuts_;
    std::vector<char> cells_;  // mixed radix, axis 0 fastest
};

// Union of level-n cylinders of an odometer, as a membership mask over
// the K_n cylinder indices.
class CylSet {
public:
    CylSet() = default;
    explicit CylSet(std::int64_t K) : mask_(static_cast<std::size_t>(K), 0) {}
    static CylSet of(std::int64_t K, const std::vector<std::int64_t>& idx);
    static CylSet full(std::int64_t K);

    std::int64_t K() const { return static_cast<std::int64_t>(mask_.size()); }
    bool contains(std::int64_t i) const { return mask_[static_cast<std::size_t>(i)] != 0; }
    void set(std::int64_t i, bool v = true) { mask_[static_cast<std::size_t>(i)] = v ? 1 : 0; }
    std::int64_t count() const;
    std::vector<std::int64_t> indices() const;
    bool is_empty() const { return count() == 0; }

    CylSet unite(const CylSet& o) const;
    CylSet intersect(const CylSet& o) const;
    CylSet minus(const CylSet& o) const;
    CylSet complement() const;
    bool subset_of(const CylSet& o) const;
    bool disjoint(const CylSet& o) const;
    CylSet translate(std::int64_t n) const;

    std::string str() const;
    friend bool operator==(const CylSet& x, const CylSet& y) = default;

private:
    std::vector<char> mask_;
};

enum class AmbientKind { Circle, Torus, Cylinders };

// A region of one of the supported ambient spaces.
class Region {
public:
    Region() : data_(CircleSet()) {}
    Region(CircleSet s) : data_(std::move(s)) {}  // NOLINT(google-explicit-constructor)
    Region(TorusSet s) : data_(std::move(s)) {}   // NOLINT(google-explicit-constructor)
    Region(CylSet s) : data_(std::move(s)) {}     // NOLINT(google-explicit-constructor)

    AmbientKind kind() const { return static_cast<AmbientKind>(data_.index()); }
    const CircleSet& circle() const;
    const TorusSet& torus() const;
    const CylSet& cyl() const;

    bool is_empty() const;
    std::string str() const;
    friend bool operator==(const Region& x, const Region& y) = default;

private:
    std::variant<CircleSet, TorusSet, CylSet> data_;
};

// Region of the whole space / the empty region for a system.
Region whole_space(const System& sys);
Region empty_region(const System& sys);
// Throws MixedAmbient when the region does not live on the system's space.
void check_ambient(const System& sys, const Region& r);

enum class SetOp { Union, Intersect, Complement, Closure, Interior, Minus };

// Set algebra; unary ops ignore `b`. Operands on different spaces raise
// MixedAmbient.
Region region_algebra(SetOp op, const Region& a, const Region& b = Region());

struct BoundaryReport {
    std::vector<Scalar> points;  // circle
    TorusSet faces;              // torus
    bool is_empty = true;
};

BoundaryReport boundary(const Region& r);
Region translate_region(const System& sys, const Region& r, long n);
Scalar measure(const System& sys, const Region& r);

// mu(U) - mu(C).
Scalar measure_gap(const System& sys, const Region& C, const Region& U);
// Open E containing the null closed set F with mu(E) < eps: arcs of radius
// eps/(4 card F) around the points of F; for F empty an arc of length eps/2
// centred at 0.
Region small_nbhd(const System& sys, const Region& F, const Scalar& eps);
// Closed K inside the open U with mu(U \ K) < eps: each component is retracted
// at both ends by min(eps/(4 p), length/8), p the number of components.
Region inner_approx(const System& sys, const Region& U, const Scalar& eps);
// Open E containing the closed F with mu(E \ F) < eps: each component is
// extended at both ends by min(eps/(4 p), adjacent gap/8).
Region outer_approx(const System& sys, const Region& F, const Scalar& eps);

}  // namespace dyncomp
