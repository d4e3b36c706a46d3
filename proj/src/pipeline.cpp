#include "stairdepth/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <thread>

namespace stairdepth {

namespace {

Int rat_floor(const Rat& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return q;
}

Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

}  // namespace

std::vector<Int> signed_coefficients(const IndexSet& I) {
    const int d = I.ambient();
    const int size = I.size();
    std::vector<Int> s(d + 1);
    for (int i = 0; i <= d; ++i) s[i] = I.contains(i) ? Int(d + 1 - size) : Int(-size);
    return s;
}

EuclideanHalfspace lemma4_halfspace(const Point& a, const IndexSet& I) {
    const int d = I.ambient();
    if (dim_of(a) != d) throw std::invalid_argument("lemma4_halfspace: dimension mismatch");
    for (const Rat& c : a)
        if (c == 0) throw std::invalid_argument("lemma4_halfspace: zero coordinate in vertex");
    std::vector<Int> s = signed_coefficients(I);
    EuclideanHalfspace g;
    g.normal.resize(d);
    for (int i = 1; i <= d; ++i) g.normal[i - 1] = Rat(s[i]) / a[i - 1];
    g.offset = Rat(-s[0]);
    return g;
}

Point snap_vertex_outward(const Point& u, const IndexSet& I, int m, int extra_steps) {
    const int d = I.ambient();
    if (dim_of(u) != d) throw std::invalid_argument("snap_vertex_outward: dimension mismatch");
    if (m < 2 || extra_steps < 1) throw std::invalid_argument("snap_vertex_outward: bad step");
    Point out(d);
    for (int i = 1; i <= d; ++i) {
        Rat t = u[i - 1] * (m - 1);
        Int steps;
        if (I.contains(i)) {
            steps = rat_floor(t) - extra_steps;
        } else {
            steps = rat_ceil(t) + extra_steps;
        }
        if (steps < -1) steps = -1;
        if (steps > m) steps = m;
        out[i - 1] = Rat(steps, m - 1);
    }
    return out;
}

bool one_separated(const GridParams& params, const Point& a, const Point& x) {
    require_same_dim(a, x);
    for (int i = 0; i < params.d; ++i) {
        const Int& Ki = params.K[i];
        if (!(x[i] >= Ki * a[i] || x[i] * Ki <= a[i])) return false;
    }
    return true;
}

std::optional<std::pair<Rat, Rat>> clip_line_to_box(const AffineFlat& line, const AxisBox& box) {
    if (line.order() != 1) throw std::invalid_argument("clip_line_to_box: needs a line");
    if (line.ambient() != box.dim()) throw std::invalid_argument("clip_line_to_box: dimension");
    if (!box.is_bounded()) throw std::invalid_argument("clip_line_to_box: unbounded box");
    const Vec& dir = line.directions[0];
    if (is_zero_vec(dir)) throw std::invalid_argument("clip_line_to_box: zero direction");
    bool have = false;
    Rat t0 = 0, t1 = 0;
    for (int i = 0; i < box.dim(); ++i) {
        const Rat lo = *box.lo[i], hi = *box.hi[i];
        if (dir[i] == 0) {
            if (line.base[i] < lo || line.base[i] > hi) return std::nullopt;
            continue;
        }
        Rat a = (lo - line.base[i]) / dir[i];
        Rat b = (hi - line.base[i]) / dir[i];
        if (a > b) std::swap(a, b);
        if (!have) {
            t0 = a;
            t1 = b;
            have = true;
        } else {
            t0 = std::max(t0, a);
            t1 = std::min(t1, b);
        }
    }
    if (!have || t0 > t1) return std::nullopt;
    return std::make_pair(t0, t1);
}

namespace {

Point line_at(const AffineFlat& line, const Rat& t) {
    Point p(line.ambient());
    for (int i = 0; i < line.ambient(); ++i) p[i] = line.base[i] + t * line.directions[0][i];
    return p;
}

// True when the line meets the open box.
bool hits_interior(const AffineFlat& line, const AxisBox& box) {
    const Vec& dir = line.directions[0];
    bool have = false;
    Rat t0 = 0, t1 = 0;
    for (int i = 0; i < box.dim(); ++i) {
        const Rat lo = *box.lo[i], hi = *box.hi[i];
        if (dir[i] == 0) {
            if (line.base[i] <= lo || line.base[i] >= hi) return false;
            continue;
        }
        Rat a = (lo - line.base[i]) / dir[i];
        Rat b = (hi - line.base[i]) / dir[i];
        if (a > b) std::swap(a, b);
        if (!have) {
            t0 = a;
            t1 = b;
            have = true;
        } else {
            t0 = std::max(t0, a);
            t1 = std::min(t1, b);
        }
    }
    return !have || t0 < t1;
}

// Separating functional phi with phi . dir = 0, phi . (v - base) <= 0 for all
// of `weak`, strictly negative for all of `strict`. Feasibility is guaranteed
// by convexity of the inputs upstream; throws otherwise.
Vec separating_functional(const Vec& dir, const Point& base, const std::vector<Point>& weak,
                          const std::vector<Point>& strict, const Vec* first_try) {
    const int d = dim_of(base);
    std::vector<Vec> offs;
    offs.reserve(weak.size() + strict.size());
    for (const auto& v : weak) {
        Vec o(d);
        for (int i = 0; i < d; ++i) o[i] = v[i] - base[i];
        offs.push_back(std::move(o));
    }
    std::size_t n_weak = offs.size();
    for (const auto& v : strict) {
        Vec o(d);
        for (int i = 0; i < d; ++i) o[i] = v[i] - base[i];
        offs.push_back(std::move(o));
    }
    auto weak_ok = [&](const Vec& phi) {
        if (is_zero_vec(phi) || dot(phi, dir) != 0) return false;
        for (const auto& o : offs)
            if (dot(phi, o) > 0) return false;
        return true;
    };
    auto strict_ok = [&](const Vec& phi) {
        for (std::size_t i = n_weak; i < offs.size(); ++i)
            if (dot(phi, offs[i]) >= 0) return false;
        return true;
    };
    if (first_try && weak_ok(*first_try) && strict_ok(*first_try)) return *first_try;

    // candidates: for every subset of <= d-2 offset vectors, the directions
    // orthogonal to the subset and to dir
    std::vector<Vec> candidates;
    auto add_from_rows = [&](std::vector<Vec> rows) {
        rows.push_back(dir);
        for (Vec& v : nullspace_basis(rows, d)) {
            candidates.push_back(v);
            Vec neg(d);
            for (int i = 0; i < d; ++i) neg[i] = -v[i];
            candidates.push_back(std::move(neg));
        }
    };
    add_from_rows({});
    const int n = static_cast<int>(offs.size());
    const int pick = std::max(0, d - 2);
    std::vector<int> idx(pick);
    std::function<void(int, int)> combos = [&](int start, int depth) {
        if (depth == pick) {
            if (depth > 0) {
                std::vector<Vec> rows;
                for (int i : idx) rows.push_back(offs[i]);
                add_from_rows(rows);
            }
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[depth] = i;
            combos(i + 1, depth + 1);
        }
    };
    if (pick > 0) combos(0, 0);

    std::vector<Vec> feasible;
    for (const auto& phi : candidates) {
        if (!weak_ok(phi)) continue;
        if (strict_ok(phi)) return phi;
        feasible.push_back(phi);
    }
    // a strictly feasible functional, when one exists, lies in the relative
    // interior of the weak cone: take the normalized sum of its generators
    if (!feasible.empty()) {
        Vec sum(d, Rat(0));
        for (const auto& phi : feasible) {
            Rat norm = 0;
            for (const auto& c : phi) norm += rat_abs(c);
            for (int i = 0; i < d; ++i) sum[i] += phi[i] / norm;
        }
        if (weak_ok(sum) && strict_ok(sum)) return sum;
    }
    throw std::runtime_error("separating_functional: no feasible separation found");
}

// Vertices of box ∩ {g . x <= c}: feasible solutions of d-subsets of the
// 2d + 1 bounding constraints.
std::vector<Point> clipped_polytope_vertices(const AxisBox& box, const Vec& g, const Rat& c) {
    const int d = box.dim();
    // constraints as rows (a, b) of a . x = b when tight; first 2d are the box
    struct Con {
        Vec a;
        Rat b;
    };
    std::vector<Con> cons;
    for (int i = 0; i < d; ++i) {
        Vec e(d, Rat(0));
        e[i] = 1;
        cons.push_back({e, *box.lo[i]});
        cons.push_back({e, *box.hi[i]});
    }
    cons.push_back({g, c});
    std::vector<Point> verts;
    auto feasible = [&](const Point& x) {
        if (!box.contains(x)) return false;
        return dot(g, x) <= c;
    };
    std::vector<int> idx(d);
    const int n = static_cast<int>(cons.size());
    std::function<void(int, int)> combos = [&](int start, int depth) {
        if (depth == d) {
            // solve the d x d system by elimination
            std::vector<Vec> A;
            Vec b(d);
            for (int r = 0; r < d; ++r) {
                A.push_back(cons[idx[r]].a);
                b[r] = cons[idx[r]].b;
            }
            // gaussian elimination with exact rationals
            std::vector<int> perm(d);
            for (int i = 0; i < d; ++i) perm[i] = i;
            bool singular = false;
            for (int col = 0; col < d && !singular; ++col) {
                int piv = -1;
                for (int r = col; r < d; ++r)
                    if (A[r][col] != 0) {
                        piv = r;
                        break;
                    }
                if (piv == -1) {
                    singular = true;
                    break;
                }
                std::swap(A[col], A[piv]);
                std::swap(b[col], b[piv]);
                for (int r = 0; r < d; ++r) {
                    if (r == col || A[r][col] == 0) continue;
                    Rat f = A[r][col] / A[col][col];
                    for (int cc = col; cc < d; ++cc) A[r][cc] -= f * A[col][cc];
                    b[r] -= f * b[col];
                }
            }
            if (singular) return;
            Point x(d);
            for (int i = 0; i < d; ++i) x[i] = b[i] / A[i][i];
            if (feasible(x)) verts.push_back(std::move(x));
            return;
        }
        for (int i = start; i < n; ++i) {
            idx[depth] = i;
            combos(i + 1, depth + 1);
        }
    };
    combos(0, 0);
    return verts;
}

}  // namespace

EuclideanHalfspace separate_line(const AffineFlat& line, const EuclideanHalfspace& hs,
                                 const AxisBox& box) {
    if (line.order() != 1) throw std::invalid_argument("separate_line: needs a line");
    const int d = line.ambient();
    const Vec& dir = line.directions[0];
    // vertices of the closure of box \ hs
    std::vector<Point> verts = clipped_polytope_vertices(box, hs.normal, hs.offset);
    std::vector<Point> weak, strict;
    for (auto& v : verts) {
        if (dot(hs.normal, v) < hs.offset)
            strict.push_back(std::move(v));
        else
            weak.push_back(std::move(v));
    }
    Vec phi;
    if (strict.empty() && weak.empty()) {
        // the box is entirely inside hs: any boundary direction works
        phi = nullspace_basis({dir}, d).front();
    } else {
        // fast path: the component of hs's normal orthogonal to the direction
        Vec proj = hs.normal;
        Rat f = dot(hs.normal, dir) / dot(dir, dir);
        for (int i = 0; i < d; ++i) proj[i] -= f * dir[i];
        phi = separating_functional(dir, line.base, weak, strict, &proj);
    }
    // points of the box that satisfy phi . x >= phi . base are never strictly
    // outside hs, so grid counts can only shrink
    EuclideanHalfspace out;
    out.normal = phi;
    out.offset = dot(phi, line.base);
    return out;
}

Int slack_constant(int d) { return Int(d + 1) * d * (Int(1) << (d + 1)) + 3 * d; }

Rat slack_bound(const GridParams& params) {
    return Rat(2, params.d + 2) + Rat(slack_constant(params.d), params.m - 1);
}

namespace {

// Floor exponent j in [0, m-1] with K_i^j <= x (x in [1, K_i^{m-1}]).
int floor_exponent(const GridParams& params, int axis, const Rat& x) {
    const Int& K = params.K[axis];
    Int num = boost::multiprecision::numerator(x);
    Int den = boost::multiprecision::denominator(x);
    int j = 0;
    Int pw = 1;
    while (j + 1 <= params.m - 1) {
        Int next = pw * K;
        if (next * den <= num)
            pw = next, ++j;
        else
            break;
    }
    return j;
}

long long count_grid_points(const std::vector<Point>& grid, const EuclideanHalfspace& g) {
    long long n = 0;
    for (const auto& p : grid)
        if (g.contains(p)) ++n;
    return n;
}

}  // namespace

LineCertificate shallow_halfspace_for_line(const GridParams& params, const AffineFlat& line) {
    const int d = params.d, m = params.m;
    if (line.ambient() != d || line.order() != 1)
        throw std::invalid_argument("shallow_halfspace_for_line: needs a line in dimension d");
    if (d < 2) throw std::invalid_argument("shallow_halfspace_for_line: requires d >= 2");
    AxisBox B = bounding_box(params);
    std::vector<Point> grid = all_grid_points(params);

    LineCertificate cert;
    cert.line = line;

    if (!hits_interior(line, B)) {
        cert.trivial = true;
        // supporting halfspace of B containing the line on its boundary
        std::vector<Point> corners;
        std::vector<int> bits(d, 0);
        for (int code = 0; code < (1 << d); ++code) {
            Point c(d);
            for (int i = 0; i < d; ++i) c[i] = (code >> i & 1) ? *B.hi[i] : *B.lo[i];
            corners.push_back(std::move(c));
        }
        Vec phi = separating_functional(line.directions[0], line.base, corners, {}, nullptr);
        cert.h3.normal = phi;
        cert.h3.offset = dot(phi, line.base);
        cert.count_h3 = count_grid_points(grid, cert.h3);
        cert.count_h2 = cert.count_h3;
        return cert;
    }

    auto clip = clip_line_to_box(line, B);
    Point p_in = line_at(line, clip->first);
    Point q_out = line_at(line, clip->second);

    // unit-space anchors, rounded outward from the segment
    Point up(d), uq(d);
    for (int i = 0; i < d; ++i) {
        int jp = floor_exponent(params, i, p_in[i]);
        int jq = floor_exponent(params, i, q_out[i]);
        if (Rat(int_pow(params.K[i], jq)) < q_out[i] && jq < m - 1) ++jq;  // ceil
        up[i] = Rat(jp, m - 1);
        uq[i] = Rat(jq, m - 1);
    }
    cert.family = cover_pair(up, uq);
    std::size_t pick = min_volume_member(cert.family);
    const StairHalfspace& H = cert.family.members[pick];
    cert.chosen = H;
    cert.member_volume = volume_in_unit_cube(H);

    bool ok = false;
    for (int e = 1; e <= 4 && !ok; ++e) {
        Point v = snap_vertex_outward(H.vertex, H.index_set, m, e);
        Point a = pi_inv(params, v);
        StairHalfspace moved(a, H.index_set);
        EuclideanHalfspace h2 = lemma4_halfspace(a, H.index_set);
        if (shs_contains(moved, p_in) && shs_contains(moved, q_out) && h2.contains(p_in) &&
            h2.contains(q_out)) {
            cert.unit_vertex = v;
            cert.stretched_vertex = a;
            cert.outward_steps = e;
            cert.h2 = h2;
            ok = true;
        }
    }
    if (!ok)
        throw std::runtime_error(
            "shallow_halfspace_for_line: endpoint membership failed after all outward retries");

    cert.h3 = separate_line(line, *cert.h2, B);
    cert.count_h2 = count_grid_points(grid, *cert.h2);
    cert.count_h3 = count_grid_points(grid, cert.h3);
    return cert;
}

int thread_cap() {
    if (const char* env = std::getenv("STAIRDEPTH_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

SweepReport line_depth_sweep(const GridParams& params, const std::vector<AffineFlat>& lines,
                             bool with_depth) {
    SweepReport report;
    report.rows.resize(lines.size());
    std::vector<Point> grid = all_grid_points(params);
    auto work = [&](std::size_t i) {
        LineCertificate cert = shallow_halfspace_for_line(params, lines[i]);
        SweepRow& row = report.rows[i];
        row.line = lines[i];
        row.trivial = cert.trivial;
        row.count_h2 = cert.count_h2;
        row.count_h3 = cert.count_h3;
        if (with_depth) row.depth = flat_depth(grid, lines[i]);
    };
    const int nthreads = std::min<int>(thread_cap(), std::max<std::size_t>(lines.size(), 1));
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < lines.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(nthreads);
        for (int t = 0; t < nthreads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = next++; i < lines.size(); i = next++) work(i);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }
    report.max_count_ratio = 0;
    for (const auto& row : report.rows) {
        if (!row.trivial)
            report.max_count_ratio =
                std::max(report.max_count_ratio, Rat(row.count_h3, params.n()));
        report.max_depth = std::max(report.max_depth, row.depth);
    }
    return report;
}

std::vector<AffineFlat> lines_through_grid_pairs(const GridParams& params) {
    std::vector<Point> grid = all_grid_points(params);
    std::vector<AffineFlat> lines;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        for (std::size_t j = i + 1; j < grid.size(); ++j) {
            Vec dir(params.d);
            for (int c = 0; c < params.d; ++c) dir[c] = grid[j][c] - grid[i][c];
            lines.push_back(AffineFlat{grid[i], {dir}});
        }
    }
    return lines;
}

std::vector<AffineFlat> random_lines(const GridParams& params, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    AxisBox B = bounding_box(params);
    const Int den = Int(1) << 20;
    auto rand_point = [&]() {
        Point p(params.d);
        for (int i = 0; i < params.d; ++i) {
            Int span = (*B.hi[i] - *B.lo[i]).convert_to<Int>() * den;
            Int num = Int(rng()) % (span + 1);
            p[i] = *B.lo[i] + Rat(num, den);
        }
        return p;
    };
    std::vector<AffineFlat> lines;
    while (static_cast<int>(lines.size()) < count) {
        Point a = rand_point(), b = rand_point();
        Vec dir(params.d);
        for (int i = 0; i < params.d; ++i) dir[i] = b[i] - a[i];
        if (is_zero_vec(dir)) continue;
        lines.push_back(AffineFlat{std::move(a), {std::move(dir)}});
    }
    return lines;
}

}  // namespace stairdepth
