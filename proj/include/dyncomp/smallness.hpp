#pragma once

#include "dyncomp/plfun.hpp"
#include "dyncomp/regions.hpp"
#include "dyncomp/systems.hpp"

#include <utility>
#include <vector>

namespace dyncomp {

enum class Verdict { Proven, BoundedSearch };

struct SmallnessCertificate {
    long constant = 0;
    Verdict verdict = Verdict::Proven;
    long search_depth = 0;
    // `constant` distinct shifts whose translates of F share a point.
    std::vector<long> witness;
    // Per-axis constants on a torus; the certificate constant is their sum.
    std::vector<long> per_axis;
};

// card {d_i + n_j}. DuplicateInput for repeated d or n_1 = n_2.
long distinct_sums_card(const std::vector<long>& d, std::pair<long, long> n);

// Exact smallness constant of a finite point set on a rotation: the largest
// number of points of F lying on one orbit. Falls back to a bounded search
// over shifts |d| <= search_depth when a point lies outside the system's field.
SmallnessCertificate smallness_constant(const System& sys, const Region& F, long search_depth = 64);
// Lower bound by brute force over shifts |d| <= depth (independent oracle).
long smallness_by_search(const System& sys, const std::vector<Scalar>& F, long depth);
// Union rule: the sum of the constants. UnprovenInput for bounded-search input.
long union_smallness_bound(const std::vector<SmallnessCertificate>& certs);

// True when h^{d(0)}(F) n ... n h^{d(m)}(F) is non-empty.
bool translates_meet(const System& sys, const CircleSet& F, const std::vector<long>& d);

struct ThinCover {
    std::vector<CircleSet> opens;  // U_j
    std::vector<long> shifts;      // d(j), with h^{d(j)}(U_j) inside U
    CircleSet nbhd;                // open V containing F, closure covered by the U_j
};

ThinCover thin_cover(const System& sys, const CircleSet& F, const CircleSet& U, long search_depth);
std::vector<std::pair<CircleSet, long>> closed_thin_cover(const System& sys, const CircleSet& F, const CircleSet& U,
                                                          long search_depth);
// Independent check: F in the union of the U_j, images inside U and pairwise disjoint.
bool verify_thin_cover(const System& sys, const CircleSet& F, const CircleSet& U, const ThinCover& cover);

// Sets W_j, V_j, T_j live on the target side inside U; F_j and f_j live on
// the source side near F. shifts holds d(j), so the image shift moving F_j
// into T_j is -d(j).
struct LeftoverCover {
    std::vector<CircleSet> F, T, V, W;
    std::vector<PLFunction> f;
    std::vector<long> shifts;
    Scalar epsilon;
    long image_shift(std::size_t j) const { return -shifts[j]; }
};

// Points of F are processed in coordinate order.
LeftoverCover leftover_cover(const System& sys, const CircleSet& F, const CircleSet& U, const Scalar& eps,
                             long search_depth = 1'000'000);

struct LeftoverReport {
    bool covers = false;     // F in the union of the F_j
    bool nested = false;     // h^{-d}(F_j) in T_j, closure T_j in V_j, closure V_j in W_j, W_j in U
    bool partition = false;  // sum f_j = 1 on the union of h^{d}(closure V_j)
    bool supports = false;   // supp(f_j) moved by the image shift lies in W_j
    bool disjoint = false;   // W_j pairwise disjoint, total measure < eps
    bool ok() const { return covers && nested && partition && supports && disjoint; }
};
LeftoverReport check_leftover_cover(const System& sys, const CircleSet& F, const CircleSet& U,
                                    const LeftoverCover& cover);

struct Separation {
    Region U, V;
    SmallnessCertificate cert;  // for the boundary of U
};

// Open U containing F and open V containing K with disjoint closures.
Separation tsbp_separate(const System& sys, const Region& F, const Region& K);
struct RegularApprox {
    Region V;
    SmallnessCertificate cert;  // for the boundary of V
};

// Open V containing x with closure inside U.
RegularApprox tsbp_point_nbhd(const System& sys, const Point& x, const Region& U);
// Open V, closure inside U, mu(U \ closure V) < eps.
RegularApprox regular_inner_approx(const System& sys, const Region& U, const Scalar& eps);
// F in V, closure V in U, mu(V \ F) < eps.
RegularApprox regular_outer_approx(const System& sys, const Region& F, const Region& U, const Scalar& eps);

}  // namespace dyncomp
