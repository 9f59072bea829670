#pragma once

#include "dyncomp/plfun.hpp"
#include "dyncomp/regions.hpp"
#include "dyncomp/systems.hpp"
#include "dyncomp/towers.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyncomp {

struct BirkhoffCertificate {
    PLFunction g0, g1, g;  // g = g1 - g0
    long N0 = 0;
    Scalar sigma;  // sigma_fraction * integral(g)
    Scalar m0;     // min S_{N0} g / N0
    long N1 = 0;   // min S_N g / N >= sigma for every N >= N1
    Scalar max_abs_g;
};

// g0 = 1 on F with support away from closure(E), g1 = 1 on an inner
// approximation of E with support in E. N0 doubles until m0 > sigma; then
// N1 = N0 * ceil((m0 + max|g|) / (m0 - sigma)).
BirkhoffCertificate birkhoff_certificate(const System& sys, const CircleSet& F, const CircleSet& E,
                                         const Scalar& sigma_fraction = Scalar::rational(1, 2));
// Exact min S_N g / N >= sigma.
bool birkhoff_spot_check(const System& sys, const BirkhoffCertificate& cert, long N);

// Reduced inputs: the core pair (C, U_0) inside the outer set U, with
// closure(U_0) in U, closure(U_0) disjoint from C and mu(C) < mu(U_0).
// When the original C meets the retracted U, the part of C near U_0 is
// handled by a patch function equal to 1 on patch_one, supported in
// patch_supp, with shift 0. `trivial` means C already lies in closure(U_0),
// and the witness is a single bump from closure(U_0) to U.
struct SimplifiedInputs {
    CircleSet C, U0, U;
    Scalar delta;  // mu(U) - mu(C) of the original inputs
    bool trivial = false;
    std::optional<std::pair<CircleSet, CircleSet>> patch;
};
SimplifiedInputs simplify_inputs(const System& sys, const CircleSet& C, const CircleSet& U);

// N(S,k): levels of column k whose interior lies in S. Columns with empty
// interior get empty lists. UnrefinedTower when an open level meets both S
// and its complement.
std::vector<std::vector<long>> column_counts(const RokhlinTower& tower, const Region& S);

struct ColumnMatch {
    std::size_t column = 0;
    std::vector<long> N_C, N_U0;
    std::vector<long> s, t, d;  // d = t - s
};
struct MatchingTable {
    std::vector<ColumnMatch> columns;
};
// Order-preserving injection N_C -> N_U0 in each listed column; `columns`
// names the column of each pair of lists (defaults to 0, 1, ...).
// ColumnDeficit unless card N_U0 > card N_C everywhere.
MatchingTable column_matching(const std::vector<std::vector<long>>& counts_C,
                              const std::vector<std::vector<long>>& counts_U0,
                              const std::vector<std::size_t>& columns = {});

struct WitnessSummary {
    long N0 = 0, N1 = 0, tower_N = 0;
    Scalar sigma;
    std::vector<long> heights;
    std::vector<bool> empty_interior;
    MatchingTable matching;
    long leftover_points = 0;
    long attempts = 0;
};

// Entries (f_j, d_j). Rotations use PL functions; odometers use indicator
// vectors of cylinder sets.
struct ComparisonWitness {
    AmbientKind kind = AmbientKind::Circle;
    std::vector<PLFunction> f;
    std::vector<CylSet> cyl;
    std::vector<long> d;
    Region C, U;
    WitnessSummary summary;

    std::size_t size() const { return d.size(); }
};

// Witness equality on the entries and inputs only.
bool same_entries(const ComparisonWitness& a, const ComparisonWitness& b);

ComparisonWitness dynamic_comparison(const System& sys, const Region& C, const Region& U);

// Levels of A in B keep their place; the rest of A goes order-preserving
// into the unused levels of B.
ComparisonWitness clopen_comparison(const System& sys, const CylSet& A, const CylSet& B);
// Exhaustive bipartite matching of A's levels into B's (every shift is allowed).
bool clopen_feasible_bruteforce(const CylSet& A, const CylSet& B);

struct VerificationReport {
    bool range = false;      // (a) 0 <= f_j <= 1
    bool sum_on_C = false;   // (b) min and max of sum f_j over C are 1
    bool disjoint = false;   // (c) translated supports pairwise disjoint
    bool contained = false;  // (d) translated supports inside U
    std::vector<std::string> notes;
    bool ok() const { return range && sum_on_C && disjoint && contained; }
};

VerificationReport verify_witness(const System& sys, const Region& C, const Region& U, const ComparisonWitness& w);

}  // namespace dyncomp
