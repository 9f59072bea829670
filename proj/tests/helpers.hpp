#pragma once

#include "dyncomp/plfun.hpp"
#include "dyncomp/regions.hpp"
#include "dyncomp/systems.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace testing {

using namespace dyncomp;

inline Scalar golden() { return Scalar::quad(-1, 1, 2, 5); }
inline System golden_rotation() { return System::rotation(golden()); }
inline Scalar q(long p, long r) { return Scalar::rational(p, r); }

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Rational in [0,1) with denominator den.
inline Scalar grid_point(std::mt19937_64& rng, long den) { return q(uniform(rng, 0, den - 1), den); }

// Random element of Q(sqrt 5) in [0,1).
inline Scalar field_point(std::mt19937_64& rng) {
    Scalar x = Scalar::quad(uniform(rng, -40, 40), uniform(rng, -20, 20), uniform(rng, 1, 60), 5);
    return x.frac();
}

// Union of up to `n` random arcs with random endpoint types on a grid.
inline CircleSet random_set(std::mt19937_64& rng, int n, long den = 64) {
    std::vector<CircleSet> parts;
    int k = static_cast<int>(uniform(rng, 0, n));
    for (int i = 0; i < k; ++i) {
        Scalar lo = grid_point(rng, den);
        Scalar len = q(uniform(rng, 0, den / 3), den);
        parts.push_back(CircleSet::arc(lo, lo + len, uniform(rng, 0, 1) != 0, uniform(rng, 0, 1) != 0));
    }
    return unite_all(std::move(parts));
}

// Sample points: the grid, the boundary points and the midpoints between them.
inline std::vector<Scalar> probes(const std::vector<CircleSet>& sets, long den = 128) {
    std::vector<Scalar> pts;
    for (long i = 0; i < den; ++i) pts.push_back(q(i, den));
    std::vector<Scalar> b;
    for (const auto& s : sets)
        for (const auto& p : s.boundary_points()) b.push_back(p);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    for (std::size_t i = 0; i < b.size(); ++i) {
        pts.push_back(b[i]);
        Scalar next = i + 1 < b.size() ? b[i + 1] : b[0] + Scalar(1);
        pts.push_back(((b[i] + next) / Scalar(2)).frac());
    }
    return pts;
}

inline PLFunction random_pl(std::mt19937_64& rng, int max_bps = 6, long den = 48) {
    int k = static_cast<int>(uniform(rng, 1, max_bps));
    std::vector<Scalar> xs;
    while (static_cast<int>(xs.size()) < k) {
        Scalar x = grid_point(rng, den);
        if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
    }
    std::vector<Breakpoint> bps;
    for (const auto& x : xs) bps.push_back({x, q(uniform(rng, -8, 8), 4)});
    return PLFunction::from_breakpoints(bps);
}

}  // namespace testing
