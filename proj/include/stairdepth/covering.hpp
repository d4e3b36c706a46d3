#pragma once

#include "stairdepth/stair_core.hpp"

namespace stairdepth {

struct CoveringFamily {
    std::vector<StairHalfspace> members;
    int delta = 0;
    std::vector<Point> anchors;

    int dim() const { return members.empty() ? 0 : members.front().dim(); }
};

struct FamilyCertificate {
    bool pass = false;
    std::string message;
    CoverCertificate cover;
};

/// Family of (d-1)(d+2)/2 stair-halfspaces, each containing p and q on its
/// boundary, covering R^d exactly d-1 times.
CoveringFamily cover_pair(const Point& p, const Point& q);

/// Checks multiplicity, anchor membership, and anchor-on-boundary for every
/// member.
FamilyCertificate check_family(const CoveringFamily& fam);

/// Member of smallest volume in the unit cube (pigeonhole: <= delta/|members|).
std::size_t min_volume_member(const CoveringFamily& fam);

}  // namespace stairdepth
