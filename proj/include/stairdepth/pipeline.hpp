#pragma once

#include "stairdepth/covering.hpp"
#include "stairdepth/depth.hpp"
#include "stairdepth/stretched_grid.hpp"

#include <optional>
#include <random>

namespace stairdepth {

/// Canonical signed coefficients for the rational-slope halfspace attached to
/// a stair-halfspace: s_i = d+1-|I| for i in I, s_i = -|I| otherwise. They
/// satisfy sum s_i = 0 and 1 <= |s_i| <= d, and s_i > 0 iff i in I.
std::vector<Int> signed_coefficients(const IndexSet& I);

/// {x : s_0 + sum_i s_i x_i / a_i >= 0}; a on the boundary.
EuclideanHalfspace lemma4_halfspace(const Point& a, const IndexSet& I);

/// Unit-space vertex moved outward (down on axes in I, up on the rest) onto the
/// 1/(m-1) grid and then `extra_steps` further steps; coordinates clamped to
/// the extended aligned range [-1/(m-1), 1 + 1/(m-1)].
Point snap_vertex_outward(const Point& u, const IndexSet& I, int m, int extra_steps);

/// x_i / a_i >= K_i or <= 1/K_i in every coordinate (ties allowed).
bool one_separated(const GridParams& params, const Point& a, const Point& x);

/// Exact intersection of the line with the grid bounding box, as a closed
/// parameter interval; nullopt when the line misses the box.
std::optional<std::pair<Rat, Rat>> clip_line_to_box(const AffineFlat& line, const AxisBox& box);

/// Halfspace whose boundary is parallel to the line (so it contains the whole
/// line) and whose intersection with the box lies inside hs: grid points of
/// the box it keeps are a subset of those hs keeps.
EuclideanHalfspace separate_line(const AffineFlat& line, const EuclideanHalfspace& hs,
                                 const AxisBox& box);

struct LineCertificate {
    AffineFlat line;
    bool trivial = false;  // line misses the box interior
    CoveringFamily family;
    std::optional<StairHalfspace> chosen;  // min-volume member, unit space
    Rat member_volume;
    Point unit_vertex;       // after the outward snap
    Point stretched_vertex;  // its image in stretched coordinates
    int outward_steps = 0;
    std::optional<EuclideanHalfspace> h2;  // rational-slope halfspace
    EuclideanHalfspace h3;                 // final halfspace containing the line
    long long count_h2 = 0;
    long long count_h3 = 0;
};

/// Full constructive pipeline for a line.
LineCertificate shallow_halfspace_for_line(const GridParams& params, const AffineFlat& line);

/// Additive slack constant of the count bound count(h2)/n <= 2/(d+2) + C_d/(m-1).
Int slack_constant(int d);

Rat slack_bound(const GridParams& params);

struct SweepRow {
    AffineFlat line;
    bool trivial = false;
    long long count_h2 = 0;
    long long count_h3 = 0;
    long long depth = -1;  // -1 when not computed
};

struct SweepReport {
    std::vector<SweepRow> rows;
    Rat max_count_ratio;  // max count_h3 / n over non-trivial rows
    long long max_depth = -1;
};

/// Runs the pipeline (and optionally the exact depth oracle) over a batch of
/// lines; parallelized up to the STAIRDEPTH_THREADS cap with deterministic
/// output order.
SweepReport line_depth_sweep(const GridParams& params, const std::vector<AffineFlat>& lines,
                             bool with_depth);

std::vector<AffineFlat> lines_through_grid_pairs(const GridParams& params);

std::vector<AffineFlat> random_lines(const GridParams& params, int count, std::uint64_t seed);

/// Thread cap from STAIRDEPTH_THREADS (>=1); hardware concurrency otherwise.
int thread_cap();

}  // namespace stairdepth
