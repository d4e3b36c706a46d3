#pragma once

#include "stairdepth/stair_core.hpp"

namespace stairdepth {

/// Exponent vector of a grid point; entries in {0, ..., m-1}.
using GridIndex = std::vector<int>;

struct GridParams {
    int d = 0;
    int m = 0;
    std::vector<Int> K;  // K[0] = 2d, K[i] = K[i-1]^m

    static GridParams make(int d, int m);
    long long n() const;  // m^d
};

/// (K_1^{a_1}, ..., K_d^{a_d}) as exact integers.
Point grid_point(const GridParams& params, const GridIndex& idx);

/// All m^d grid points in lexicographic index order.
std::vector<Point> all_grid_points(const GridParams& params);

std::vector<GridIndex> all_grid_indices(const GridParams& params);

/// The box [1, K_1^{m-1}] x ... x [1, K_d^{m-1}].
AxisBox bounding_box(const GridParams& params);

/// Exponent j with K_i^j == value, for any integer j >= 0; nullopt otherwise.
std::optional<long> exact_log(const Int& base, const Rat& value);

/// Image of a grid-aligned point under the logarithmic map: coordinate i maps
/// to a_i/(m-1) where x_i = K_i^{a_i}. Accepts any integer exponent (also
/// outside {0..m-1}); throws if some coordinate is not an exact power.
Point pi_grid(const GridParams& params, const Point& x);

/// Inverse on unit points whose coordinates are integer multiples of
/// 1/(m-1); exponents may lie outside {0..m-1} (negative powers give
/// rationals).
Point pi_inv(const GridParams& params, const Point& u);

/// |pi(x)_i - pi(y)_i| <= c/(m-1) in coordinate i. Both points must be
/// grid-aligned (exact powers).
bool c_close_in_coord(const GridParams& params, const Point& x, const Point& y, const Rat& c,
                      int i);

/// Close in every coordinate.
bool c_close(const GridParams& params, const Point& x, const Point& y, const Rat& c);

/// Far (not c-close) in every coordinate.
bool c_far(const GridParams& params, const Point& x, const Point& y, const Rat& c);

/// For grid indices a (layer 0: a_d = 0) and b (layer i >= 1), intersects the
/// segment between the corresponding grid points with the hyperplane
/// x_d = K_d^{i-1} and checks |c_j - (grid a)_j| <= 1 for all j < d.
bool lemma1_check(const GridParams& params, const GridIndex& a, const GridIndex& b);

}  // namespace stairdepth
