#include "stairdepth/depth.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace stairdepth {

int halfspace_count(const std::vector<Point>& S, const EuclideanHalfspace& g) {
    if (is_zero_vec(g.normal)) throw std::invalid_argument("halfspace_count: zero normal");
    int n = 0;
    for (const auto& p : S)
        if (g.contains(p)) ++n;
    return n;
}

int matrix_rank(std::vector<Vec> rows) {
    int rank = 0;
    if (rows.empty()) return 0;
    const int ncols = static_cast<int>(rows[0].size());
    int row = 0;
    for (int col = 0; col < ncols && row < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = row; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == -1) continue;
        std::swap(rows[row], rows[pivot]);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == row || rows[r][col] == 0) continue;
            Rat factor = rows[r][col] / rows[row][col];
            for (int c = col; c < ncols; ++c) rows[r][c] -= factor * rows[row][c];
        }
        ++row;
        ++rank;
    }
    return rank;
}

std::vector<Vec> nullspace_basis(const std::vector<Vec>& rows_in, int ncols) {
    std::vector<Vec> rows = rows_in;
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != ncols)
            throw std::invalid_argument("nullspace_basis: ragged rows");
    // reduced row echelon form
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < ncols && row < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = row; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) {
                pivot = r;
                break;
            }
        if (pivot == -1) continue;
        std::swap(rows[row], rows[pivot]);
        Rat lead = rows[row][col];
        for (int c = col; c < ncols; ++c) rows[row][c] /= lead;
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == row || rows[r][col] == 0) continue;
            Rat factor = rows[r][col];
            for (int c = col; c < ncols; ++c) rows[r][c] -= factor * rows[row][c];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<Vec> basis;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        Vec v(ncols, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = -rows[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

namespace {

struct HSMin {
    long long count = 0;
    Vec normal;
};

Vec lifted(const Vec& w, int skip) {
    Vec out(w.size() + 1);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = (static_cast<int>(i) == skip) ? Rat(0) : w[idx++];
    return out;
}

HSMin min_halfspace(const std::vector<Vec>& V, int D);

// Count for normals infinitesimally rotated from u: strict positives, plus
// the recursive optimum over the points exactly on the hyperplane. The
// returned normal achieves the count exactly.
HSMin eval_candidate(const std::vector<Vec>& V, const Vec& u, int D) {
    long long strict = 0;
    std::vector<Vec> on_plane;
    for (const auto& v : V) {
        Rat s = dot(u, v);
        if (s > 0)
            ++strict;
        else if (s == 0)
            on_plane.push_back(v);
    }
    if (on_plane.empty()) return {strict, u};
    int skip = 0;
    while (u[skip] == 0) ++skip;
    std::vector<Vec> dropped;
    dropped.reserve(on_plane.size());
    for (const auto& v : on_plane) {
        Vec w;
        w.reserve(D - 1);
        for (int i = 0; i < D; ++i)
            if (i != skip) w.push_back(v[i]);
        dropped.push_back(std::move(w));
    }
    HSMin sub = min_halfspace(dropped, D - 1);
    Vec w = lifted(sub.normal, skip);
    // rotate u toward w just enough to resolve the ties without flipping any
    // strict sign
    Rat min_abs = 0;
    bool have = false;
    Rat max_w = 0;
    for (const auto& v : V) {
        Rat s = dot(u, v);
        if (s != 0) {
            Rat a = rat_abs(s);
            if (!have || a < min_abs) {
                min_abs = a;
                have = true;
            }
        }
        Rat m = rat_abs(dot(w, v));
        if (m > max_w) max_w = m;
    }
    Rat delta = have ? min_abs / (max_w + 1) : Rat(1);
    Vec composed(D);
    for (int i = 0; i < D; ++i) composed[i] = u[i] + delta * w[i];
    return {strict + sub.count, composed};
}

HSMin min_halfspace(const std::vector<Vec>& V, int D) {
    if (D == 1) {
        long long le = 0, ge = 0;
        for (const auto& v : V) {
            if (v[0] <= 0) ++le;
            if (v[0] >= 0) ++ge;
        }
        if (le <= ge) return {le, Vec{Rat(-1)}};
        return {ge, Vec{Rat(1)}};
    }
    std::vector<Vec> candidates;
    for (int i = 0; i < D; ++i) {
        Vec e(D, Rat(0));
        e[i] = 1;
        candidates.push_back(e);
    }
    // normals of hyperplanes spanned by D-1 of the offset vectors
    const int n = static_cast<int>(V.size());
    std::vector<int> idx(D - 1);
    std::function<void(int, int)> combos = [&](int start, int depth) {
        if (depth == D - 1) {
            std::vector<Vec> rows;
            for (int i : idx) rows.push_back(V[i]);
            auto ns = nullspace_basis(rows, D);
            if (ns.size() == 1) candidates.push_back(ns[0]);
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[depth] = i;
            combos(i + 1, depth + 1);
        }
    };
    combos(0, 0);

    std::optional<HSMin> best;
    for (const auto& u : candidates) {
        for (int sign = 0; sign < 2; ++sign) {
            Vec cu = u;
            if (sign) {
                for (auto& c : cu) c = -c;
            }
            HSMin r = eval_candidate(V, cu, D);
            if (!best || r.count < best->count) best = r;
        }
    }
    return *best;
}

std::vector<Vec> offsets(const std::vector<Point>& S, const Point& x) {
    std::vector<Vec> V;
    V.reserve(S.size());
    for (const auto& p : S) {
        require_same_dim(p, x);
        Vec v(dim_of(x));
        for (int i = 0; i < dim_of(x); ++i) v[i] = p[i] - x[i];
        V.push_back(std::move(v));
    }
    return V;
}

}  // namespace

DepthResult tukey_depth_witness(const std::vector<Point>& S, const Point& x) {
    const int D = dim_of(x);
    if (D < 1) throw std::invalid_argument("tukey_depth: empty query point");
    HSMin r = min_halfspace(offsets(S, x), D);
    DepthResult out;
    out.depth = r.count;
    out.witness.normal = r.normal;
    out.witness.offset = dot(r.normal, x);
    return out;
}

long long tukey_depth(const std::vector<Point>& S, const Point& x) {
    return tukey_depth_witness(S, x).depth;
}

long long tukey_depth_sweep2d(const std::vector<Point>& S, const Point& x) {
    if (dim_of(x) != 2) throw std::invalid_argument("tukey_depth_sweep2d: requires d = 2");
    std::vector<Vec> V = offsets(S, x);
    std::vector<Vec> candidates = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
    for (const auto& v : V)
        if (v[0] != 0 || v[1] != 0) candidates.push_back({-v[1], v[0]});
    long long best = static_cast<long long>(S.size());
    for (const auto& u0 : candidates) {
        for (int sign = 0; sign < 2; ++sign) {
            Vec u = u0;
            if (sign) {
                u[0] = -u[0];
                u[1] = -u[1];
            }
            Vec r{-u[1], u[0]};
            long long at = 0, plus = 0, minus = 0;
            for (const auto& v : V) {
                Rat s = dot(u, v);
                if (s > 0) {
                    ++at;
                    ++plus;
                    ++minus;
                } else if (s == 0) {
                    ++at;
                    Rat t = dot(r, v);
                    if (t >= 0) ++plus;
                    if (t <= 0) ++minus;
                }
            }
            best = std::min({best, at, plus, minus});
        }
    }
    return best;
}

DepthResult flat_depth_witness(const std::vector<Point>& S, const AffineFlat& f) {
    const int d = f.ambient();
    const int k = f.order();
    if (k >= d) throw std::invalid_argument("flat_depth: flat order must be below ambient");
    if (matrix_rank(f.directions) != k)
        throw std::invalid_argument("flat_depth: directions are linearly dependent");
    if (k == 0) return tukey_depth_witness(S, f.base);
    // rows of the projection: basis of the common orthogonal solutions, so the
    // kernel is exactly the span of the directions
    std::vector<Vec> P = nullspace_basis(f.directions, d);
    const int D = d - k;
    if (static_cast<int>(P.size()) != D) throw std::logic_error("flat_depth: projection rank");
    auto project = [&](const Point& p) {
        Point q(D);
        for (int i = 0; i < D; ++i) q[i] = dot(P[i], p);
        return q;
    };
    std::vector<Point> PS;
    PS.reserve(S.size());
    for (const auto& p : S) PS.push_back(project(p));
    DepthResult proj = tukey_depth_witness(PS, project(f.base));
    DepthResult out;
    out.depth = proj.depth;
    out.witness.normal = Vec(d, Rat(0));
    for (int i = 0; i < D; ++i)
        for (int c = 0; c < d; ++c) out.witness.normal[c] += proj.witness.normal[i] * P[i][c];
    out.witness.offset = dot(out.witness.normal, f.base);
    return out;
}

long long flat_depth(const std::vector<Point>& S, const AffineFlat& f) {
    return flat_depth_witness(S, f).depth;
}

std::vector<Point> cloud_set(int d, int cloud_size, const Rat& radius) {
    if (d < 1 || cloud_size < 1) throw std::invalid_argument("cloud_set: bad parameters");
    if (radius < 0) throw std::invalid_argument("cloud_set: negative radius");
    std::vector<Point> anchors;
    anchors.emplace_back(d, Rat(0));
    for (int i = 0; i < d; ++i) {
        Point e(d, Rat(0));
        e[i] = 1;
        anchors.push_back(e);
    }
    Point centroid(d, Rat(0));
    for (const auto& a : anchors)
        for (int i = 0; i < d; ++i) centroid[i] += a[i] / (d + 1);
    std::vector<Point> out;
    for (const auto& a : anchors) {
        for (int j = 1; j <= cloud_size; ++j) {
            Point p(d);
            for (int i = 0; i < d; ++i)
                p[i] = a[i] + Rat(j, cloud_size) * radius * (centroid[i] - a[i]);
            out.push_back(std::move(p));
        }
    }
    return out;
}

}  // namespace stairdepth
