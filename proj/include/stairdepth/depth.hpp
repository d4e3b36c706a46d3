#pragma once

#include "stairdepth/rational.hpp"

#include <vector>

namespace stairdepth {

/// Closed halfspace {x : normal . x >= offset}.
struct EuclideanHalfspace {
    Vec normal;
    Rat offset;

    bool contains(const Point& x) const { return dot(normal, x) >= offset; }
};

/// base + span(directions); directions linearly independent.
struct AffineFlat {
    Point base;
    std::vector<Vec> directions;

    int ambient() const { return dim_of(base); }
    int order() const { return static_cast<int>(directions.size()); }
};

int halfspace_count(const std::vector<Point>& S, const EuclideanHalfspace& g);

struct DepthResult {
    long long depth = 0;
    EuclideanHalfspace witness;  // achieves depth; its boundary passes through the query
};

/// Exact Tukey depth: minimum of |g ∩ S| over closed halfspaces g containing
/// x, via candidate normals from point subsets refined by symbolic
/// perturbation on ties.
DepthResult tukey_depth_witness(const std::vector<Point>& S, const Point& x);

long long tukey_depth(const std::vector<Point>& S, const Point& x);

/// Independent 2D oracle: angular sweep over directions orthogonal to the
/// point offsets, with one-sided perturbed evaluations at each critical
/// direction.
long long tukey_depth_sweep2d(const std::vector<Point>& S, const Point& x);

/// Depth of a k-flat: project S along the flat's directions with an exact
/// rational map and take the Tukey depth of the projected base point.
DepthResult flat_depth_witness(const std::vector<Point>& S, const AffineFlat& f);

long long flat_depth(const std::vector<Point>& S, const AffineFlat& f);

/// d+1 clouds of cloud_size points each, pulled inward from the standard
/// simplex vertices toward the centroid; the innermost cloud point has depth
/// exactly cloud_size.
std::vector<Point> cloud_set(int d, int cloud_size, const Rat& radius);

// Exact rational linear algebra helpers.
int matrix_rank(std::vector<Vec> rows);

/// Basis of {y : row . y = 0 for every row}.
std::vector<Vec> nullspace_basis(const std::vector<Vec>& rows, int ncols);

}  // namespace stairdepth
