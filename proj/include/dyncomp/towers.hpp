#pragma once

#include "dyncomp/regions.hpp"
#include "dyncomp/systems.hpp"

#include <string>
#include <vector>

namespace dyncomp {

// Closed cell of the base on which the first return time is constant.
// Isolated points of the base have empty interior and are flagged.
struct ReturnCell {
    Region region;
    long time = 0;
    bool empty_interior = false;
};

struct Column {
    Region base;  // closed Y_k
    long height = 0;
    bool empty_interior = false;
};

struct RokhlinTower {
    System sys;
    Region base;
    std::vector<Column> columns;

    // h^j(Y_k).
    Region level(std::size_t k, long j) const;
    std::size_t level_count() const;
};

// Guard on return times.
constexpr long kMaxReturnTime = 1'000'000;

std::vector<ReturnCell> first_return(const System& sys, const Region& Y);
RokhlinTower build_tower(const System& sys, const Region& Y);

// Splits columns so that every open level lies in exactly one element of the
// partition. InvalidPartition unless the closures cover X and the interiors
// are pairwise disjoint.
RokhlinTower refine_tower(const RokhlinTower& tower, const std::vector<Region>& partition);

// Closed Y around the anchor with Y, h(Y), ..., h^N(Y) pairwise disjoint.
Region disjoint_base(const System& sys, long N, const Point& anchor);

struct TowerReport {
    bool open_levels_disjoint = false;
    bool levels_cover = false;
    bool base_union = false;
    bool kac = false;
    Scalar kac_sum;
    bool ok() const { return open_levels_disjoint && levels_cover && base_union && kac; }
};

Scalar kac_sum(const RokhlinTower& tower);
TowerReport check_tower(const RokhlinTower& tower);

}  // namespace dyncomp
