#include "stairdepth/stair_flats.hpp"

#include <algorithm>

namespace stairdepth {

namespace {

Point projection(const Point& x) { return Point(x.begin(), x.end() - 1); }

Point appended(Point x, const Rat& last) {
    x.push_back(last);
    return x;
}

}  // namespace

std::shared_ptr<const StairFlat> StairFlat::make_point(Point p) {
    if (p.empty()) throw std::invalid_argument("StairFlat: empty point");
    auto f = std::make_shared<StairFlat>();
    f->form = FlatForm::Point;
    f->d = dim_of(p);
    f->k = 0;
    f->point = std::move(p);
    return f;
}

std::shared_ptr<const StairFlat> StairFlat::make_full(int d) {
    if (d < 0) throw std::invalid_argument("StairFlat: bad dimension");
    auto f = std::make_shared<StairFlat>();
    f->form = FlatForm::Full;
    f->d = d;
    f->k = d;
    return f;
}

std::shared_ptr<const StairFlat> StairFlat::make_horizontal(
    std::shared_ptr<const StairFlat> inner, Rat z) {
    if (!inner) throw std::invalid_argument("StairFlat: null inner flat");
    auto f = std::make_shared<StairFlat>();
    f->form = FlatForm::Horizontal;
    f->d = inner->d + 1;
    f->k = inner->k;
    f->inner = std::move(inner);
    f->z = std::move(z);
    return f;
}

std::shared_ptr<const StairFlat> StairFlat::make_vertical(
    std::shared_ptr<const StairFlat> inner) {
    if (!inner) throw std::invalid_argument("StairFlat: null inner flat");
    auto f = std::make_shared<StairFlat>();
    f->form = FlatForm::Vertical;
    f->d = inner->d + 1;
    f->k = inner->k + 1;
    f->inner = std::move(inner);
    return f;
}

std::shared_ptr<const StairFlat> StairFlat::make_diagonal(
    std::shared_ptr<const StairFlat> boundary, std::shared_ptr<const HalfStairFlat> half,
    Rat z) {
    if (!boundary || !half || !half->carrier || !half->boundary)
        throw std::invalid_argument("StairFlat: incomplete diagonal data");
    if (half->carrier->d != boundary->d)
        throw std::invalid_argument("StairFlat: half carrier dimension mismatch");
    if (half->carrier->k != boundary->k + 1)
        throw std::invalid_argument("StairFlat: half carrier must have order one higher");
    if (half->witnesses.empty())
        throw std::invalid_argument("StairFlat: half-flat needs at least one witness");
    auto f = std::make_shared<StairFlat>();
    f->form = FlatForm::Diagonal;
    f->d = boundary->d + 1;
    f->k = boundary->k + 1;
    f->boundary = std::move(boundary);
    f->half = std::move(half);
    f->z = std::move(z);
    return f;
}

bool flat_contains(const StairFlat& f, const Point& x) {
    if (dim_of(x) != f.d) throw std::invalid_argument("flat_contains: dimension mismatch");
    switch (f.form) {
        case FlatForm::Point:
            return x == f.point;
        case FlatForm::Full:
            return true;
        case FlatForm::Horizontal:
            return x[f.d - 1] == f.z && flat_contains(*f.inner, projection(x));
        case FlatForm::Vertical:
            return flat_contains(*f.inner, projection(x));
        case FlatForm::Diagonal: {
            const Rat& t = x[f.d - 1];
            if (t > f.z) return false;
            Point xb = projection(x);
            if (flat_contains(*f.boundary, xb)) return true;
            return t == f.z && flat_contains(*f.half->carrier, xb) &&
                   half_contains(*f.half, xb);
        }
    }
    return false;
}

bool half_contains(const HalfStairFlat& h, const Point& x) {
    if (!flat_contains(*h.carrier, x))
        throw std::invalid_argument("half_contains: point not on the carrier flat");
    if (flat_contains(*h.boundary, x)) return true;
    for (const Point& w : h.witnesses) {
        bool crossed = false;
        for (const auto& [u, v] : stair_path(x, w).segments()) {
            if (!flat_segment_params(*h.boundary, u, v).empty()) {
                crossed = true;
                break;
            }
        }
        // The stair-path runs inside the (stair-convex) carrier; if it never
        // meets the boundary flat, x is on the witness side.
        if (!crossed) return true;
    }
    return false;
}

void IntervalSet::add(const Rat& lo, const Rat& hi) {
    if (lo > hi) throw std::invalid_argument("IntervalSet: inverted interval");
    parts.emplace_back(lo, hi);
    std::sort(parts.begin(), parts.end());
    std::vector<std::pair<Rat, Rat>> merged;
    for (auto& p : parts) {
        if (!merged.empty() && p.first <= merged.back().second) {
            if (p.second > merged.back().second) merged.back().second = p.second;
        } else {
            merged.push_back(p);
        }
    }
    parts = std::move(merged);
}

void IntervalSet::add(const IntervalSet& other) {
    for (const auto& p : other.parts) add(p.first, p.second);
}

IntervalSet IntervalSet::subtract(const IntervalSet& other) const {
    std::vector<std::pair<Rat, Rat>> cur = parts;
    for (const auto& [a, b] : other.parts) {
        std::vector<std::pair<Rat, Rat>> next;
        for (const auto& [l, h] : cur) {
            if (b < l || a > h) {
                next.emplace_back(l, h);
                continue;
            }
            // Keep closures of the surviving components.
            if (a > l) next.emplace_back(l, a);
            if (b < h) next.emplace_back(b, h);
        }
        cur = std::move(next);
    }
    IntervalSet out;
    out.parts = std::move(cur);
    return out;
}

namespace {

// Axis along which the segment varies, or -1 for a degenerate segment.
int varying_axis(const Point& u, const Point& v) {
    int axis = -1;
    for (int i = 0; i < dim_of(u); ++i) {
        if (u[i] != v[i]) {
            if (axis != -1)
                throw std::invalid_argument("flat_segment_params: segment not axis-parallel");
            axis = i;
        }
    }
    return axis;
}

}  // namespace

IntervalSet flat_segment_params(const StairFlat& f, const Point& u, const Point& v) {
    require_same_dim(u, v);
    if (dim_of(u) != f.d)
        throw std::invalid_argument("flat_segment_params: dimension mismatch");
    IntervalSet out;
    const int j = varying_axis(u, v);
    if (j == -1) {
        if (flat_contains(f, u)) out.add(0, 1);
        return out;
    }
    const int last = f.d - 1;
    switch (f.form) {
        case FlatForm::Point: {
            for (int i = 0; i < f.d; ++i)
                if (i != j && u[i] != f.point[i]) return out;
            Rat t = (f.point[j] - u[j]) / (v[j] - u[j]);
            if (t >= 0 && t <= 1) out.add(t, t);
            return out;
        }
        case FlatForm::Full:
            out.add(0, 1);
            return out;
        case FlatForm::Horizontal: {
            if (j == last) {
                Rat t = (f.z - u[last]) / (v[last] - u[last]);
                if (t >= 0 && t <= 1 && flat_contains(*f.inner, projection(u))) out.add(t, t);
                return out;
            }
            if (u[last] != f.z) return out;
            return flat_segment_params(*f.inner, projection(u), projection(v));
        }
        case FlatForm::Vertical: {
            if (j == last) {
                if (flat_contains(*f.inner, projection(u))) out.add(0, 1);
                return out;
            }
            return flat_segment_params(*f.inner, projection(u), projection(v));
        }
        case FlatForm::Diagonal: {
            Point ub = projection(u);
            if (j == last) {
                Rat delta = v[last] - u[last];
                Rat t0 = (f.z - u[last]) / delta;
                if (flat_contains(*f.boundary, ub)) {
                    // parameter range where the last coordinate is <= z
                    if (delta > 0) {
                        if (t0 >= 0) out.add(0, t0 < 1 ? t0 : Rat(1));
                    } else {
                        if (t0 <= 1) out.add(t0 > 0 ? t0 : Rat(0), 1);
                    }
                }
                if (t0 >= 0 && t0 <= 1 && flat_contains(*f.half->carrier, ub) &&
                    half_contains(*f.half, ub))
                    out.add(t0, t0);
                return out;
            }
            if (u[last] > f.z) return out;
            Point vb = projection(v);
            if (u[last] < f.z) return flat_segment_params(*f.boundary, ub, vb);
            // Slice at the horizontal level: boundary params, plus the pieces
            // of the carrier params that lie on the witness side.
            IntervalSet bnd = flat_segment_params(*f.boundary, ub, vb);
            IntervalSet car = flat_segment_params(*f.half->carrier, ub, vb);
            out.add(bnd);
            for (const auto& [lo, hi] : car.subtract(bnd).parts) {
                Rat mid = (lo + hi) / 2;
                Point sample(f.d - 1);
                for (int i = 0; i < f.d - 1; ++i) sample[i] = ub[i] + mid * (vb[i] - ub[i]);
                if (half_contains(*f.half, sample)) out.add(lo, hi);
            }
            return out;
        }
    }
    return out;
}

HalfClass classify_half(const HalfStairFlat& h, const StairHalfspace& H) {
    if (h.witnesses.empty())
        throw std::invalid_argument("classify_half: half-flat has no witnesses");
    bool any_interior = false, any_outside = false;
    for (const Point& w : h.witnesses) {
        if (!shs_contains(H, w))
            any_outside = true;
        else if (!shs_boundary_contains(H, w))
            any_interior = true;
    }
    // If the half meets the interior it must be fully contained; witnesses in
    // the interior and outside at once contradict that.
    if (any_interior && any_outside)
        throw std::runtime_error(
            "classify_half: witnesses fall both inside the interior and outside");
    if (any_interior) return HalfClass::Interior;
    if (any_outside) return HalfClass::Outside;
    return HalfClass::Boundary;
}

Int binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Int r = 1;
    for (int i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

GammaDelta gamma_delta(int k, int d) {
    if (k < 0 || k > d) throw std::invalid_argument("gamma_delta: requires 0 <= k <= d");
    GammaDelta gd;
    gd.k = k;
    gd.d = d;
    gd.delta = binomial(d - 1, k);
    Int num = gd.delta * (d + k + 1);
    if (num % (k + 1) != 0) throw std::logic_error("gamma_delta: gamma is not an integer");
    gd.gamma = num / (k + 1);
    return gd;
}

Point point_on(const StairFlat& f) {
    switch (f.form) {
        case FlatForm::Point:
            return f.point;
        case FlatForm::Full:
            return Point(f.d, Rat(0));
        case FlatForm::Horizontal:
            return appended(point_on(*f.inner), f.z);
        case FlatForm::Vertical:
            return appended(point_on(*f.inner), Rat(0));
        case FlatForm::Diagonal:
            return appended(point_on(*f.boundary), f.z);
    }
    throw std::logic_error("point_on: bad form");
}

std::vector<Point> flat_samples(const StairFlat& f) {
    std::vector<Point> out;
    switch (f.form) {
        case FlatForm::Point:
            out.push_back(f.point);
            break;
        case FlatForm::Full: {
            out.emplace_back(f.d, Rat(0));
            for (int i = 0; i < f.d; ++i) {
                Point p(f.d, Rat(0));
                p[i] = 1;
                out.push_back(p);
                p[i] = -1;
                out.push_back(p);
            }
            break;
        }
        case FlatForm::Horizontal:
            for (const auto& s : flat_samples(*f.inner)) out.push_back(appended(s, f.z));
            break;
        case FlatForm::Vertical:
            for (const auto& s : flat_samples(*f.inner)) {
                out.push_back(appended(s, Rat(0)));
                out.push_back(appended(s, Rat(-2)));
            }
            break;
        case FlatForm::Diagonal:
            for (const auto& s : flat_samples(*f.boundary)) {
                out.push_back(appended(s, f.z));
                out.push_back(appended(s, f.z - 2));
            }
            for (const auto& w : f.half->witnesses) out.push_back(appended(w, f.z));
            break;
    }
    return out;
}

namespace {

std::vector<StairHalfspace> point_cover(const Point& a) {
    std::vector<StairHalfspace> fam;
    for (int i = 0; i <= dim_of(a); ++i)
        fam.emplace_back(a, IndexSet(dim_of(a), std::vector<int>{i}));
    return fam;
}

}  // namespace

CoveringFamily cover_flat(const StairFlat& f) {
    CoveringFamily fam;
    fam.anchors = flat_samples(f);
    const int d = f.d;
    switch (f.form) {
        case FlatForm::Point:
            fam.members = point_cover(f.point);
            fam.delta = 1;
            break;
        case FlatForm::Full:
            fam.delta = 0;  // Gamma(d, d) = 0: the empty family
            break;
        case FlatForm::Vertical:
            throw std::invalid_argument(
                "cover_flat: vertical stair-flats are unsupported; no stair-halfspace "
                "contains a vertical line in its boundary, so no covering family of this "
                "kind exists");
        case FlatForm::Horizontal: {
            CoveringFamily inner_cov = cover_flat(*f.inner);
            const int k = f.k;
            GammaDelta gd = gamma_delta(k, d);
            Int lower_slabs = binomial(d - 2, k - 1);   // delta'(k-1, d-1)
            for (const auto& H : inner_cov.members)
                fam.members.emplace_back(appended(H.vertex, f.z),
                                         IndexSet(d, H.index_set.mask()));
            Point a = appended(point_on(*f.inner), f.z);
            for (Int i = 0; i < lower_slabs; ++i)
                fam.members.emplace_back(a, IndexSet(d, (1u << d) - 1u));
            for (Int i = 0; i < gd.delta; ++i)
                fam.members.emplace_back(a, IndexSet(d, 1u << d));
            fam.delta = static_cast<int>(gd.delta);
            if (Int(fam.members.size()) != gd.gamma)
                throw std::logic_error("cover_flat: horizontal member count mismatch");
            break;
        }
        case FlatForm::Diagonal: {
            CoveringFamily fam1 = cover_flat(*f.boundary);        // covers f'
            CoveringFamily fam2 = cover_flat(*f.half->carrier);   // covers f''
            GammaDelta gd = gamma_delta(f.k, d);
            GammaDelta gdp = gamma_delta(f.k - 1, d - 1);
            const Int delta = gd.delta, delta_p = gdp.delta;

            std::vector<HalfClass> cls;
            Int n_out = 0, n_in = 0;
            for (const auto& H : fam1.members) {
                cls.push_back(classify_half(*f.half, H));
                if (cls.back() == HalfClass::Outside) ++n_out;
                if (cls.back() == HalfClass::Interior) ++n_in;
            }
            if (n_out > delta || n_in > delta_p)
                throw std::runtime_error(
                    "cover_flat: up/down partition infeasible (" + n_out.str() +
                    " outside vs capacity " + delta.str() + ", " + n_in.str() +
                    " interior vs capacity " + delta_p.str() +
                    ") -- counterexample to the claimed classification bounds");

            Int need_up = delta - n_out;
            std::vector<bool> up(fam1.members.size(), false);
            for (std::size_t i = 0; i < fam1.members.size(); ++i) {
                if (cls[i] == HalfClass::Outside)
                    up[i] = true;
                else if (cls[i] == HalfClass::Boundary && need_up > 0) {
                    up[i] = true;
                    --need_up;
                }
            }
            if (need_up != 0)
                throw std::logic_error("cover_flat: could not fill the upper part");

            for (std::size_t i = 0; i < fam1.members.size(); ++i) {
                std::uint32_t mask = fam1.members[i].index_set.mask();
                if (up[i]) mask |= (1u << d);
                fam.members.emplace_back(appended(fam1.members[i].vertex, f.z),
                                         IndexSet(d, mask));
            }
            for (const auto& H : fam2.members)
                fam.members.emplace_back(appended(H.vertex, f.z),
                                         IndexSet(d, H.index_set.mask()));
            fam.delta = static_cast<int>(delta);
            if (Int(fam.members.size()) != gd.gamma)
                throw std::logic_error("cover_flat: diagonal member count mismatch");
            break;
        }
    }
    return fam;
}

std::shared_ptr<const StairFlat> fig6_flat() {
    auto b = StairFlat::make_point({Rat(2)});
    auto h = std::make_shared<HalfStairFlat>(
        HalfStairFlat{StairFlat::make_full(1), b, {{Rat(1)}, {Rat(0)}}});
    return StairFlat::make_diagonal(b, h, Rat(4));
}

std::shared_ptr<const StairFlat> fig7_flat() {
    auto line = fig6_flat();
    auto h = std::make_shared<HalfStairFlat>(HalfStairFlat{
        StairFlat::make_full(2), line, {{Rat(0), Rat(0)}, {Rat(1), Rat(1)}, {Rat(1), Rat(3)}}});
    return StairFlat::make_diagonal(line, h, Rat(3));
}

std::shared_ptr<const StairFlat> fig9_flat() {
    auto b = StairFlat::make_point({Rat(2), Rat(2)});
    auto h = std::make_shared<HalfStairFlat>(
        HalfStairFlat{fig6_flat(), b, {{Rat(2), Rat(0)}, {Rat(2), Rat(1)}}});
    return StairFlat::make_diagonal(b, h, Rat(3));
}

std::shared_ptr<const StairFlat> fig8_flat() {
    auto line = fig9_flat();
    auto h = std::make_shared<HalfStairFlat>(HalfStairFlat{
        fig7_flat(), line, {{Rat(2), Rat(3), Rat(0)}, {Rat(2), Rat(3), Rat(3)}}});
    return StairFlat::make_diagonal(line, h, Rat(5));
}

std::vector<StairHalfspace> fig9_expected_family() {
    Point a{Rat(2), Rat(2), Rat(3)};
    Point b{Rat(2), Rat(4), Rat(3)};
    return {StairHalfspace(a, IndexSet(3, std::vector<int>{0, 3})),
            StairHalfspace(a, IndexSet(3, std::vector<int>{1})),
            StairHalfspace(a, IndexSet(3, std::vector<int>{2, 3})),
            StairHalfspace(b, IndexSet(3, std::vector<int>{0})),
            StairHalfspace(b, IndexSet(3, std::vector<int>{1, 2}))};
}

namespace {

struct Extension {
    GenFlat carrier;
    std::vector<Point> side_a, side_b;
};

Rat rand_small(std::mt19937& rng) {
    std::uniform_int_distribution<int> v(0, 6);
    return Rat(v(rng));
}

Extension gen_extension(const GenFlat& g, std::mt19937& rng);

GenFlat gen_flat_rec(int k, int d, std::mt19937& rng) {
    if (k < 0 || k > d) throw std::invalid_argument("gen_flat: requires 0 <= k <= d");
    if (k == 0) {
        Point p(d);
        for (int i = 0; i < d; ++i) p[i] = rand_small(rng);
        return GenFlat{StairFlat::make_point(p), {}, nullptr};
    }
    GenFlat gp = gen_flat_rec(k - 1, d - 1, rng);
    Extension ext = gen_extension(gp, rng);
    std::uniform_int_distribution<int> coin(0, 1);
    bool flip = coin(rng) == 1;
    std::vector<Point> side = flip ? ext.side_b : ext.side_a;
    std::vector<Point> opp = flip ? ext.side_a : ext.side_b;
    auto h = std::make_shared<HalfStairFlat>(
        HalfStairFlat{ext.carrier.flat, gp.flat, std::move(side)});
    GenFlat out;
    out.flat = StairFlat::make_diagonal(gp.flat, h, rand_small(rng));
    out.opp = std::move(opp);
    out.carrier_info = std::make_shared<GenFlat>(ext.carrier);
    return out;
}

Extension gen_extension(const GenFlat& g, std::mt19937& rng) {
    const StairFlat& f = *g.flat;
    const int D = f.d;
    Extension ext;
    if (f.form == FlatForm::Point && D == 1) {
        const Rat& p = f.point[0];
        ext.carrier = GenFlat{StairFlat::make_full(1), {}, nullptr};
        ext.side_a = {{p - 1}, {p - 2}};
        ext.side_b = {{p + 1}, {p + 2}};
        return ext;
    }
    if (f.form == FlatForm::Point) {
        const Point& p = f.point;
        Point pb = projection(p);
        GenFlat base{StairFlat::make_point(pb), {}, nullptr};
        Extension ext2 = gen_extension(base, rng);
        Rat zc = p[D - 1] + 2 + rand_small(rng);
        auto h2 = std::make_shared<HalfStairFlat>(
            HalfStairFlat{ext2.carrier.flat, base.flat, ext2.side_a});
        ext.carrier =
            GenFlat{StairFlat::make_diagonal(base.flat, h2, zc), ext2.side_b,
                    std::make_shared<GenFlat>(ext2.carrier)};
        // Sides of the point within the carrier stair-line: strictly below,
        // and the arc going up and into the horizontal part.
        ext.side_a = {appended(pb, p[D - 1] - 1), appended(pb, p[D - 1] - 2)};
        ext.side_b = {appended(pb, p[D - 1] + 1), appended(pb, zc)};
        for (const Point& w : ext2.side_a) ext.side_b.push_back(appended(w, zc));
        return ext;
    }
    if (f.form != FlatForm::Diagonal)
        throw std::invalid_argument("gen_extension: unsupported flat form");
    const auto& he = *f.half;
    if (f.k + 1 == D) {
        // The carrier is all of R^D; the flat's horizontal half splits the
        // space: below its relative interior vs everything else.
        ext.carrier = GenFlat{StairFlat::make_full(D), {}, nullptr};
        for (const Point& w : he.witnesses) {
            ext.side_a.push_back(appended(w, f.z - 1));
            ext.side_a.push_back(appended(w, f.z - 2));
            ext.side_b.push_back(appended(w, f.z + 1));
        }
        for (const Point& w : g.opp) ext.side_b.push_back(appended(w, f.z));
        return ext;
    }
    if (!g.carrier_info)
        throw std::invalid_argument("gen_extension: missing carrier info for diagonal flat");
    Extension ext2 = gen_extension(*g.carrier_info, rng);
    auto h2 = std::make_shared<HalfStairFlat>(
        HalfStairFlat{ext2.carrier.flat, g.carrier_info->flat, ext2.side_a});
    ext.carrier = GenFlat{StairFlat::make_diagonal(g.carrier_info->flat, h2, f.z),
                          ext2.side_b, std::make_shared<GenFlat>(ext2.carrier)};
    // Below the relative interior of the horizontal half vs the opposite
    // side plus the new horizontal part.
    for (const Point& w : he.witnesses) {
        ext.side_a.push_back(appended(w, f.z - 1));
        ext.side_a.push_back(appended(w, f.z - 2));
    }
    for (const Point& w : g.opp) {
        ext.side_b.push_back(appended(w, f.z));
        ext.side_b.push_back(appended(w, f.z - 1));
    }
    for (const Point& w : h2->witnesses) ext.side_b.push_back(appended(w, f.z));
    return ext;
}

}  // namespace

GenFlat gen_flat(int k, int d, std::mt19937& rng) {
    if (k >= d)
        throw std::invalid_argument("gen_flat: requires k < d for a proper flat");
    return gen_flat_rec(k, d, rng);
}

}  // namespace stairdepth
