#pragma once

#include "dyncomp/regions.hpp"
#include "dyncomp/scalar.hpp"
#include "dyncomp/systems.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace dyncomp {

struct Breakpoint {
    Scalar x, v;
    friend bool operator==(const Breakpoint&, const Breakpoint&) = default;
};

// Continuous piecewise-linear function on the circle R/Z: linear
// interpolation between consecutive breakpoints, wrapping from the last
// breakpoint to the first. Canonical form has no collinear breakpoints; a
// constant c is stored as the single breakpoint (0, c).
class PLFunction {
public:
    PLFunction() : bp_{{Scalar(0), Scalar(0)}} {}
    static PLFunction constant(const Scalar& c);
    // Points are reduced mod 1 and sorted; duplicate x values are rejected.
    static PLFunction from_breakpoints(std::vector<Breakpoint> bps);

    const std::vector<Breakpoint>& breakpoints() const { return bp_; }
    std::size_t size() const { return bp_.size(); }
    bool is_constant() const { return bp_.size() == 1; }
    bool is_zero() const { return is_constant() && bp_[0].v.is_zero(); }

    Scalar operator()(const Scalar& x) const;
    double approx(double x) const;
    // Slope on the segment starting at breakpoint i.
    Scalar slope(std::size_t i) const;
    // Index of the segment containing x (x_i <= x < x_{i+1}, cyclically).
    std::size_t segment_of(const Scalar& x) const;

    friend bool operator==(const PLFunction&, const PLFunction&) = default;

private:
    friend PLFunction make_sorted(std::vector<Breakpoint> bps);
    void canonicalize();
    std::vector<Breakpoint> bp_;
};

// Builds from breakpoints already sorted and distinct in [0,1).
PLFunction make_sorted(std::vector<Breakpoint> bps);

// Value 1 on F, closed support inside W. Inside each component of W the
// function is 1 on the hull of F's part there and ramps linearly to 0 at the
// midpoints between that hull and the component's ends. NoGap unless
// closure(F) lies in the open set W.
PLFunction bump(const CircleSet& F, const CircleSet& W);

enum class PLOp { Min, Max, Sum, Difference, Scale };
// Binary ops use a and b; Scale multiplies a by k.
PLFunction pl_combine(PLOp op, const PLFunction& a, const PLFunction& b = PLFunction(), const Scalar& k = Scalar(1));
PLFunction pl_min(const PLFunction& a, const PLFunction& b);
PLFunction pl_max(const PLFunction& a, const PLFunction& b);
PLFunction pl_add(const PLFunction& a, const PLFunction& b);
PLFunction pl_sub(const PLFunction& a, const PLFunction& b);
PLFunction pl_scale(const PLFunction& a, const Scalar& k);
// Sum of many functions by pairwise merging.
PLFunction pl_sum_all(std::vector<PLFunction> fs);

// x -> f(x - t).
PLFunction shift_fn(const PLFunction& f, const Scalar& t);
// f o h^{-n} on a rotation.
PLFunction translate_fn(const System& sys, const PLFunction& f, long n);

// Cap on breakpoints produced by birkhoff_sum: DYNCOMP_BP_CAP or 10^7.
std::size_t breakpoint_cap();
// S_N g = sum_{j<N} g o h^j. BreakpointBudget when N * size(g) exceeds the cap.
PLFunction birkhoff_sum(const System& sys, const PLFunction& g, long N);

struct Extrema {
    Scalar min, max;
    Scalar argmin;
};
Extrema global_extrema(const PLFunction& f);
// Extrema over the closure of R (non-empty).
Extrema extrema_on(const PLFunction& f, const CircleSet& R);

Scalar integral(const PLFunction& f);
Scalar integral(const System& sys, const PLFunction& f);

struct SupportReport {
    CircleSet support;  // closure of {f != 0}
    CircleSet one_set;  // {f = 1}
};
SupportReport support(const PLFunction& f);
CircleSet support_set(const PLFunction& f);

// f_j = min(g_j, 1 - sum_{i<j} f_i). Only earlier functions whose supports
// can overlap supp(g_j) enter the partial sum; the others vanish there.
std::vector<PLFunction> min_cascade(const std::vector<PLFunction>& g);

// Cascade over bump(F_j, W_j). CoverFailure unless C lies in the union of the F_j.
std::vector<PLFunction> partition_of_unity(const std::vector<std::pair<CircleSet, CircleSet>>& pairs,
                                           const CircleSet& C);

}  // namespace dyncomp
