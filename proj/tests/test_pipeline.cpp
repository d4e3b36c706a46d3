#include <doctest.h>

#include "stairdepth/pipeline.hpp"

#include <random>

using namespace stairdepth;

namespace {

Point pt(std::initializer_list<int> v) {
    Point p;
    for (int x : v) p.push_back(Rat(x));
    return p;
}

AffineFlat line_through(const Point& a, const Point& b) {
    Vec dir(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) dir[i] = b[i] - a[i];
    return AffineFlat{a, {dir}};
}

void check_certificate(const GridParams& params, const LineCertificate& cert) {
    const Vec& dir = cert.line.directions[0];
    // the final halfspace contains the whole line on its boundary
    CHECK(dot(cert.h3.normal, dir) == 0);
    CHECK(dot(cert.h3.normal, cert.line.base) == cert.h3.offset);
    if (cert.trivial) return;
    CHECK(cert.member_volume <= Rat(2, params.d + 2));
    CHECK(cert.h2.has_value());
    CHECK(cert.count_h3 <= cert.count_h2);
    CHECK(Rat(cert.count_h2, params.n()) <= slack_bound(params));
    // the moved vertex is on the boundary of the rational-slope halfspace
    CHECK(dot(cert.h2->normal, cert.stretched_vertex) == cert.h2->offset);
}

}  // namespace

TEST_CASE("signed coefficient examples and invariants") {
    auto s1 = signed_coefficients(IndexSet(2, std::vector<int>{1}));
    CHECK(s1 == std::vector<Int>{Int(-1), Int(2), Int(-1)});
    auto s2 = signed_coefficients(IndexSet(2, std::vector<int>{0, 2}));
    CHECK(s2 == std::vector<Int>{Int(1), Int(-2), Int(1)});

    for (int d = 2; d <= 5; ++d) {
        for (std::uint32_t mask = 1; mask < (1u << (d + 1)) - 1u; ++mask) {
            IndexSet I(d, mask);
            auto s = signed_coefficients(I);
            Int sum = 0;
            for (int i = 0; i <= d; ++i) {
                sum += s[i];
                CHECK((s[i] > 0) == I.contains(i));
                CHECK(rat_abs(Rat(s[i])) >= 1);
                CHECK(rat_abs(Rat(s[i])) <= d);
            }
            CHECK(sum == 0);
        }
    }
}

TEST_CASE("lemma4 halfspace passes through the vertex") {
    Point a{Rat(4), Rat(64)};
    IndexSet I(2, std::vector<int>{1});
    EuclideanHalfspace g = lemma4_halfspace(a, I);
    CHECK(dot(g.normal, a) == g.offset);
    CHECK_THROWS_AS(lemma4_halfspace(Point{Rat(0), Rat(1)}, I), std::invalid_argument);
}

TEST_CASE("lemma4 agreement on far grid points, d=2 m=4") {
    GridParams params = GridParams::make(2, 4);
    Point a = grid_point(params, {2, 2});
    auto grid = all_grid_points(params);
    for (std::uint32_t mask = 1; mask < 7u; ++mask) {
        IndexSet I(2, mask);
        StairHalfspace H(a, I);
        EuclideanHalfspace g = lemma4_halfspace(a, I);
        for (const auto& x : grid) {
            if (!c_far(params, a, x, Rat(1))) continue;
            CHECK(shs_contains(H, x) == g.contains(x));
        }
    }
}

TEST_CASE("snap_vertex_outward examples") {
    const int m = 4;
    IndexSet I(2, std::vector<int>{0, 2});
    Point u{Rat(1, 3), Rat(2, 3)};  // grid-aligned
    Point v = snap_vertex_outward(u, I, m, 1);
    CHECK(v == Point{Rat(2, 3), Rat(1, 3)});

    // generic coordinates move at most 2/(m-1) and land on the grid
    std::mt19937 rng(91);
    std::uniform_int_distribution<int> num(0, 30);
    for (int it = 0; it < 50; ++it) {
        Point w{Rat(num(rng), 30), Rat(num(rng), 30)};
        Point s = snap_vertex_outward(w, I, m, 1);
        for (int i = 0; i < 2; ++i) {
            Rat t = s[i] * (m - 1);
            CHECK(boost::multiprecision::denominator(t) == 1);
            CHECK(rat_abs(s[i] - w[i]) <= Rat(2, m - 1));
            CHECK(s[i] >= Rat(-1, m - 1));
            CHECK(s[i] <= Rat(m, m - 1));
        }
    }

    // clamping at the extended range
    Point edge{Rat(0), Rat(1)};
    Point c = snap_vertex_outward(edge, I, m, 4);
    CHECK(c[0] == Rat(m, m - 1));
    CHECK(c[1] == Rat(-1, m - 1));
}

TEST_CASE("snapped member contains the original") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<int> num(0, 12);
    for (int it = 0; it < 30; ++it) {
        int d = 2 + it % 2;
        Point u(d);
        for (auto& c : u) c = Rat(num(rng), 12);
        std::uniform_int_distribution<int> mask_dist(1, (1 << (d + 1)) - 2);
        IndexSet I(d, static_cast<std::uint32_t>(mask_dist(rng)));
        StairHalfspace H(u, I);
        Point v = snap_vertex_outward(u, I, 5, 1 + it % 2);
        StairHalfspace moved(v, I);
        CHECK(shs_subset(H, moved));
    }
}

TEST_CASE("line clipping") {
    AxisBox box = AxisBox::bounded(pt({0, 0}), pt({1, 1}));
    AffineFlat l = line_through(Point{Rat(-1), Rat(1, 2)}, Point{Rat(0), Rat(1, 2)});
    auto clip = clip_line_to_box(l, box);
    REQUIRE(clip.has_value());
    CHECK(clip->first == 1);
    CHECK(clip->second == 2);

    AffineFlat miss = line_through(Point{Rat(-1), Rat(2)}, Point{Rat(0), Rat(2)});
    CHECK(!clip_line_to_box(miss, box).has_value());

    AffineFlat diag = line_through(pt({0, 0}), pt({1, 1}));
    auto dc = clip_line_to_box(diag, box);
    REQUIRE(dc.has_value());
    CHECK(dc->first == 0);
    CHECK(dc->second == 1);
}

TEST_CASE("separate_line keeps the box side inside the original halfspace") {
    AxisBox box = AxisBox::bounded(pt({0, 0, 0}), pt({1, 1, 1}));
    EuclideanHalfspace hs{{Rat(1), Rat(1), Rat(1)}, Rat(1, 2)};
    AffineFlat l = line_through(pt({1, 1, 0}), Point{Rat(2), Rat(0), Rat(0)});
    EuclideanHalfspace h3 = separate_line(l, hs, box);
    CHECK(dot(h3.normal, l.directions[0]) == 0);
    CHECK(dot(h3.normal, l.base) == h3.offset);
    // sample the box densely: kept points are never strictly outside hs
    for (int x = 0; x <= 4; ++x)
        for (int y = 0; y <= 4; ++y)
            for (int z = 0; z <= 4; ++z) {
                Point p{Rat(x, 4), Rat(y, 4), Rat(z, 4)};
                if (h3.contains(p)) CHECK(dot(hs.normal, p) >= hs.offset);
            }
}

TEST_CASE("theorem1 certificate for the d=2 diagonal") {
    GridParams params = GridParams::make(2, 4);
    Point lo = grid_point(params, {0, 0});
    Point hi = grid_point(params, {3, 3});
    AffineFlat l = line_through(lo, hi);
    LineCertificate cert = shallow_halfspace_for_line(params, l);
    CHECK(!cert.trivial);
    check_certificate(params, cert);
    CHECK(Rat(cert.count_h3, params.n()) <= Rat(1, 2) + Rat(slack_constant(2), params.m - 1));
    auto grid = all_grid_points(params);
    CHECK(flat_depth(grid, l) <= cert.count_h3);
}

TEST_CASE("theorem1 trivial certificate when the line misses the box") {
    GridParams params = GridParams::make(2, 3);
    AffineFlat l = line_through(Point{Rat(0), Rat(0)}, Point{Rat(0), Rat(1)});
    LineCertificate cert = shallow_halfspace_for_line(params, l);
    CHECK(cert.trivial);
    check_certificate(params, cert);
    // the halfspace touches the box at most on its boundary
    AxisBox B = bounding_box(params);
    Point mid(2);
    for (int i = 0; i < 2; ++i) mid[i] = (*B.lo[i] + *B.hi[i]) / 2;
    CHECK(!cert.h3.contains(mid));
}

TEST_CASE("theorem1 random lines, d=2 and d=3") {
    for (auto [d, m, count] : std::vector<std::tuple<int, int, int>>{{2, 4, 25}, {3, 3, 15}}) {
        GridParams params = GridParams::make(d, m);
        auto grid = all_grid_points(params);
        for (const auto& l : random_lines(params, count, 1234 + d)) {
            LineCertificate cert = shallow_halfspace_for_line(params, l);
            check_certificate(params, cert);
            if (!cert.trivial) CHECK(flat_depth(grid, l) <= cert.count_h3);
        }
    }
}

TEST_CASE("line sweep is deterministic and bounds depth") {
    GridParams params = GridParams::make(2, 3);
    auto lines = lines_through_grid_pairs(params);
    CHECK(lines.size() == 36);  // 9 choose 2
    SweepReport a = line_depth_sweep(params, lines, true);
    SweepReport b = line_depth_sweep(params, lines, true);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].count_h2 == b.rows[i].count_h2);
        CHECK(a.rows[i].count_h3 == b.rows[i].count_h3);
        CHECK(a.rows[i].depth == b.rows[i].depth);
        CHECK(a.rows[i].depth <= a.rows[i].count_h3);
    }
    CHECK(a.max_count_ratio == b.max_count_ratio);
    // a median line through grid points reaches depth >= n/2
    CHECK(a.max_depth >= (params.n() + 1) / 2);

    SweepReport empty = line_depth_sweep(params, {}, false);
    CHECK(empty.rows.empty());
}

TEST_CASE("slack constants") {
    CHECK(slack_constant(3) == 201);
    GridParams params = GridParams::make(3, 5);
    CHECK(slack_bound(params) == Rat(2, 5) + Rat(201, 4));
}
