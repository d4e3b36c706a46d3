#include "stairdepth/stretched_grid.hpp"

namespace stairdepth {

GridParams GridParams::make(int d, int m) {
    if (d < 1) throw std::invalid_argument("GridParams: d must be >= 1");
    if (m < 2) throw std::invalid_argument("GridParams: m must be >= 2");
    GridParams p;
    p.d = d;
    p.m = m;
    p.K.resize(d);
    p.K[0] = 2 * d;
    for (int i = 1; i < d; ++i) p.K[i] = int_pow(p.K[i - 1], m);
    return p;
}

long long GridParams::n() const {
    long long r = 1;
    for (int i = 0; i < d; ++i) r *= m;
    return r;
}

Point grid_point(const GridParams& params, const GridIndex& idx) {
    if (static_cast<int>(idx.size()) != params.d)
        throw std::invalid_argument("grid_point: index dimension mismatch");
    Point p(params.d);
    for (int i = 0; i < params.d; ++i) {
        if (idx[i] < 0 || idx[i] >= params.m)
            throw std::invalid_argument("grid_point: exponent out of range");
        p[i] = Rat(int_pow(params.K[i], idx[i]));
    }
    return p;
}

std::vector<GridIndex> all_grid_indices(const GridParams& params) {
    std::vector<GridIndex> out;
    GridIndex idx(params.d, 0);
    while (true) {
        out.push_back(idx);
        int i = 0;
        while (i < params.d && idx[i] + 1 == params.m) idx[i++] = 0;
        if (i == params.d) break;
        ++idx[i];
    }
    return out;
}

std::vector<Point> all_grid_points(const GridParams& params) {
    std::vector<Point> out;
    for (const auto& idx : all_grid_indices(params)) out.push_back(grid_point(params, idx));
    return out;
}

AxisBox bounding_box(const GridParams& params) {
    Point low(params.d), high(params.d);
    for (int i = 0; i < params.d; ++i) {
        low[i] = Rat(1);
        high[i] = Rat(int_pow(params.K[i], params.m - 1));
    }
    return AxisBox::bounded(low, high);
}

std::optional<long> exact_log(const Int& base, const Rat& value) {
    if (base < 2) throw std::invalid_argument("exact_log: base must be >= 2");
    if (value <= 0) return std::nullopt;
    Int num = numerator(value), den = denominator(value);
    if (den == 1) {
        long e = 0;
        Int v = num;
        while (v > 1) {
            if (v % base != 0) return std::nullopt;
            v /= base;
            ++e;
        }
        return e;
    }
    if (num != 1) return std::nullopt;
    long e = 0;
    Int v = den;
    while (v > 1) {
        if (v % base != 0) return std::nullopt;
        v /= base;
        ++e;
    }
    return -e;
}

Point pi_grid(const GridParams& params, const Point& x) {
    if (dim_of(x) != params.d) throw std::invalid_argument("pi_grid: dimension mismatch");
    Point u(params.d);
    for (int i = 0; i < params.d; ++i) {
        auto e = exact_log(params.K[i], x[i]);
        if (!e)
            throw std::invalid_argument("pi_grid: coordinate " + std::to_string(i + 1) +
                                        " is not an exact power of its base");
        u[i] = Rat(*e, params.m - 1);
    }
    return u;
}

Point pi_inv(const GridParams& params, const Point& u) {
    if (dim_of(u) != params.d) throw std::invalid_argument("pi_inv: dimension mismatch");
    Point x(params.d);
    for (int i = 0; i < params.d; ++i) {
        Rat scaled = u[i] * (params.m - 1);
        if (denominator(scaled) != 1)
            throw std::invalid_argument("pi_inv: coordinate " + std::to_string(i + 1) +
                                        " is not an integer multiple of 1/(m-1)");
        Int e = numerator(scaled);
        if (e >= 0)
            x[i] = Rat(int_pow(params.K[i], static_cast<unsigned long>(e)));
        else
            x[i] = Rat(Int(1), int_pow(params.K[i], static_cast<unsigned long>(-e)));
    }
    return x;
}

bool c_close_in_coord(const GridParams& params, const Point& x, const Point& y, const Rat& c,
                      int i) {
    if (c < 0) throw std::invalid_argument("c_close: c must be >= 0");
    Point ux = pi_grid(params, x), uy = pi_grid(params, y);
    return rat_abs(ux[i] - uy[i]) <= c / (params.m - 1);
}

bool c_close(const GridParams& params, const Point& x, const Point& y, const Rat& c) {
    for (int i = 0; i < params.d; ++i)
        if (!c_close_in_coord(params, x, y, c, i)) return false;
    return true;
}

bool c_far(const GridParams& params, const Point& x, const Point& y, const Rat& c) {
    for (int i = 0; i < params.d; ++i)
        if (c_close_in_coord(params, x, y, c, i)) return false;
    return true;
}

bool lemma1_check(const GridParams& params, const GridIndex& a, const GridIndex& b) {
    const int d = params.d;
    if (d < 2) throw std::invalid_argument("lemma1_check: requires d >= 2");
    if (a[d - 1] != 0) throw std::invalid_argument("lemma1_check: a must lie in layer 0");
    int layer = b[d - 1];
    if (layer < 1) throw std::invalid_argument("lemma1_check: b must lie in layer >= 1");
    Point A = grid_point(params, a), B = grid_point(params, b);
    // Intersection with the hyperplane x_d = K_d^{layer-1}.
    Rat height(int_pow(params.K[d - 1], layer - 1));
    Rat t = (height - A[d - 1]) / (B[d - 1] - A[d - 1]);
    for (int j = 0; j < d - 1; ++j) {
        Rat cj = A[j] + t * (B[j] - A[j]);
        if (rat_abs(cj - A[j]) > 1) return false;
    }
    return true;
}

}  // namespace stairdepth
