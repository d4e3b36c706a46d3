#include <doctest.h>

#include "stairdepth/stair_core.hpp"

#include <random>

using namespace stairdepth;

namespace {

Point pt(std::initializer_list<int> v) {
    Point p;
    for (int x : v) p.push_back(Rat(x));
    return p;
}

Point ptr(std::initializer_list<Rat> v) { return Point(v); }

std::vector<StairHalfspace> all_components(const Point& a) {
    std::vector<StairHalfspace> fam;
    const int d = dim_of(a);
    for (int i = 0; i <= d; ++i) fam.emplace_back(a, IndexSet(d, std::vector<int>{i}));
    return fam;
}

Point random_point(std::mt19937& rng, int d, int lo = -8, int hi = 8) {
    std::uniform_int_distribution<int> num(lo * 2, hi * 2);
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = Rat(num(rng), 2);
    return p;
}

}  // namespace

TEST_CASE("IndexSet validation") {
    CHECK_THROWS_AS(IndexSet(2, std::uint32_t(0)), std::invalid_argument);
    CHECK_THROWS_AS(IndexSet(2, std::vector<int>{0, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(IndexSet(2, std::vector<int>{3}), std::invalid_argument);
    IndexSet I(3, std::vector<int>{0, 2});
    CHECK(I.size() == 2);
    CHECK(I.contains(0));
    CHECK(!I.contains(1));
    CHECK(I.complement().members() == std::vector<int>{1, 3});
    CHECK(I.with(1).members() == std::vector<int>{0, 1, 2});
}

TEST_CASE("type_set examples") {
    CHECK(type_set(pt({0, 0}), pt({-1, -1})) == std::vector<int>{0});
    CHECK(type_set(pt({0, 0}), pt({1, -1})) == std::vector<int>{1});
    CHECK(type_set(pt({0, 0}), pt({0, 0})) == std::vector<int>{0, 1, 2});
    CHECK_THROWS_AS(type_set(pt({0, 0}), pt({0})), std::invalid_argument);
}

TEST_CASE("type_set nonempty and generic type consistency") {
    std::mt19937 rng(7);
    for (int it = 0; it < 400; ++it) {
        int d = 1 + it % 4;
        Point a = random_point(rng, d), b = random_point(rng, d);
        auto T = type_set(a, b);
        CHECK(!T.empty());
        int g = generic_type(a, b);
        CHECK(std::find(T.begin(), T.end(), g) != T.end());
        bool generic = true;
        for (int i = 0; i < d; ++i)
            if (a[i] == b[i]) generic = false;
        if (generic) CHECK(T == std::vector<int>{g});
    }
}

TEST_CASE("component_box examples") {
    Point a = ptr({Rat(1, 2), Rat(1, 2)});
    AxisBox b0 = component_box(a, 0);
    CHECK(!b0.lo[0]);
    CHECK(*b0.hi[0] == Rat(1, 2));
    CHECK(*b0.hi[1] == Rat(1, 2));
    AxisBox b2 = component_box(a, 2);
    CHECK(!b2.lo[0]);
    CHECK(!b2.hi[0]);
    CHECK(*b2.lo[1] == Rat(1, 2));
    CHECK(!b2.hi[1]);
    AxisBox b1 = component_box(a, 1);
    CHECK(*b1.lo[0] == Rat(1, 2));
    CHECK(!b1.hi[0]);
    CHECK(!b1.lo[1]);
    CHECK(*b1.hi[1] == Rat(1, 2));
    CHECK_THROWS_AS(component_box(a, 3), std::invalid_argument);
}

TEST_CASE("component_box agrees with type_set membership") {
    std::mt19937 rng(11);
    for (int it = 0; it < 300; ++it) {
        int d = 1 + it % 4;
        Point a = random_point(rng, d), b = random_point(rng, d);
        auto T = type_set(a, b);
        for (int i = 0; i <= d; ++i) {
            bool in_box = component_box(a, i).contains(b);
            bool in_type = std::find(T.begin(), T.end(), i) != T.end();
            CHECK(in_box == in_type);
        }
    }
}

TEST_CASE("shs_contains examples") {
    Point a = ptr({Rat(1, 2), Rat(1, 2)});
    StairHalfspace H(a, IndexSet(2, std::vector<int>{0, 2}));
    CHECK(shs_contains(H, pt({0, 0})));
    CHECK(!shs_contains(H, pt({1, 0})));
    CHECK(shs_contains(H, pt({0, 1})));
}

TEST_CASE("shs_contains equals type_set intersection") {
    std::mt19937 rng(13);
    for (int it = 0; it < 300; ++it) {
        int d = 1 + it % 4;
        Point a = random_point(rng, d), x = random_point(rng, d);
        std::uniform_int_distribution<std::uint32_t> mask(1, (1u << (d + 1)) - 2);
        StairHalfspace H(a, IndexSet(d, mask(rng)));
        auto T = type_set(a, x);
        bool expect = false;
        for (int j : T)
            if (H.index_set.contains(j)) expect = true;
        CHECK(shs_contains(H, x) == expect);
    }
}

TEST_CASE("types partition generic points between I and its complement") {
    std::mt19937 rng(17);
    for (int it = 0; it < 300; ++it) {
        int d = 1 + it % 4;
        Point a = random_point(rng, d), x = random_point(rng, d);
        bool generic = true;
        for (int i = 0; i < d; ++i)
            if (a[i] == x[i]) generic = false;
        if (!generic) continue;
        std::uniform_int_distribution<std::uint32_t> mask(1, (1u << (d + 1)) - 2);
        IndexSet I(d, mask(rng));
        StairHalfspace H(a, I), Hc(a, I.complement());
        CHECK(shs_contains(H, x) != shs_contains(Hc, x));
    }
}

TEST_CASE("shs_boundary_contains examples") {
    StairHalfspace H(pt({0, 0}), IndexSet(2, std::vector<int>{0}));
    CHECK(shs_boundary_contains(H, pt({0, 0}), Rat(1, 4)));
    CHECK(!shs_boundary_contains(H, pt({-1, -1}), Rat(1, 4)));
    // non-member point is never on the boundary
    StairHalfspace H01(pt({0, 0}), IndexSet(2, std::vector<int>{0, 1}));
    CHECK(!shs_contains(H01, pt({-1, 1})));
    CHECK(!shs_boundary_contains(H01, pt({-1, 1}), Rat(1, 4)));
    // gap precondition
    CHECK_THROWS_AS(shs_boundary_contains(H, pt({-1, -1}), Rat(2)), std::invalid_argument);
    CHECK_THROWS_AS(shs_boundary_contains(H, pt({0, 0}), Rat(0)), std::invalid_argument);
    // auto-gap overload
    CHECK(shs_boundary_contains(H, pt({0, -3})));
    CHECK(!shs_boundary_contains(H, pt({-2, -3})));
}

TEST_CASE("stair_path examples") {
    StairPath p1 = stair_path(pt({0}), pt({1}));
    CHECK(p1.chain == std::vector<Point>{pt({0}), pt({1})});

    StairPath p2 = stair_path(pt({0, 0}), pt({1, 1}));
    CHECK(p2.chain == std::vector<Point>{pt({0, 0}), pt({0, 1}), pt({1, 1})});
    CHECK(p2.segments().size() == 2);

    StairPath p3 = stair_path(pt({0, 0, 0}), pt({1, 1, 1}));
    CHECK(p3.chain ==
          std::vector<Point>{pt({0, 0, 0}), pt({0, 0, 1}), pt({0, 1, 1}), pt({1, 1, 1})});

    // degenerate coordinates collapse segments
    StairPath p4 = stair_path(pt({0, 0}), pt({1, 0}));
    CHECK(p4.chain == std::vector<Point>{pt({0, 0}), pt({1, 0})});
    StairPath p5 = stair_path(pt({2, 2}), pt({2, 2}));
    CHECK(p5.chain.size() == 1);
}

namespace {

// Points along the polyline: all chain vertices plus segment midpoints.
std::vector<Point> path_samples(const StairPath& p) {
    std::vector<Point> out = p.chain;
    for (auto& [u, v] : p.segments()) {
        Point mid(dim_of(u));
        for (int i = 0; i < dim_of(u); ++i) mid[i] = (u[i] + v[i]) / 2;
        out.push_back(mid);
    }
    return out;
}

}  // namespace

TEST_CASE("stair-paths stay inside stair-halfspaces and their complements") {
    std::mt19937 rng(23);
    for (int it = 0; it < 200; ++it) {
        int d = 2 + it % 3;
        Point a = random_point(rng, d);
        std::uniform_int_distribution<std::uint32_t> mask(1, (1u << (d + 1)) - 2);
        StairHalfspace H(a, IndexSet(d, mask(rng)));
        Point x = random_point(rng, d), y = random_point(rng, d);
        bool in_x = shs_contains(H, x), in_y = shs_contains(H, y);
        if (in_x != in_y) continue;
        for (const Point& s : path_samples(stair_path(x, y)))
            CHECK(shs_contains(H, s) == in_x);
    }
}

TEST_CASE("sub-path property") {
    std::mt19937 rng(29);
    for (int it = 0; it < 100; ++it) {
        int d = 2 + it % 3;
        Point a = random_point(rng, d), b = random_point(rng, d);
        StairPath p = stair_path(a, b);
        if (p.chain.size() < 3) continue;
        // pick two interior chain vertices; the path between them must be the
        // corresponding sub-polyline
        std::uniform_int_distribution<std::size_t> pick(0, p.chain.size() - 1);
        std::size_t i = pick(rng), j = pick(rng);
        if (i > j) std::swap(i, j);
        StairPath sub = stair_path(p.chain[i], p.chain[j]);
        std::vector<Point> expect(p.chain.begin() + i, p.chain.begin() + j + 1);
        CHECK(sub.chain == expect);
    }
}

TEST_CASE("translate_outwards examples and subset property") {
    Point a = ptr({Rat(1, 2), Rat(1, 2)});
    StairHalfspace H(a, IndexSet(2, std::vector<int>{0, 2}));
    Point b = ptr({Rat(3, 4), Rat(1, 4)});
    StairHalfspace Hp = translate_outwards(H, b);
    CHECK(Hp.index_set == H.index_set);
    CHECK(shs_subset(H, Hp));

    CHECK_THROWS_AS(translate_outwards(H, ptr({Rat(1, 4), Rat(1, 4)})), std::invalid_argument);

    StairHalfspace H1(pt({0, 0}), IndexSet(2, std::vector<int>{1}));
    StairHalfspace H1p = translate_outwards(H1, pt({-1, 1}));
    CHECK(shs_subset(H1, H1p));
}

TEST_CASE("translate_outwards subset property randomized") {
    std::mt19937 rng(31);
    for (int it = 0; it < 150; ++it) {
        int d = 1 + it % 4;
        Point a = random_point(rng, d);
        std::uniform_int_distribution<std::uint32_t> mask(1, (1u << (d + 1)) - 2);
        IndexSet I(d, mask(rng));
        std::uniform_int_distribution<int> shift(1, 3);
        Point b = a;
        for (int i = 1; i <= d; ++i)
            b[i - 1] += I.contains(i) ? Rat(-shift(rng)) : Rat(shift(rng));
        StairHalfspace H(a, I), Hp = translate_outwards(H, b);
        CHECK(shs_subset(H, Hp));
        // strictness: the translation is proper, so Hp is not inside H
        CHECK(!shs_subset(Hp, H));
    }
}

TEST_CASE("multiplicity_at examples") {
    Point a = pt({1, 2, 3});
    auto fam = all_components(a);
    std::mt19937 rng(37);
    for (int it = 0; it < 50; ++it) {
        Point x = random_point(rng, 3, -9, 9);
        bool generic = true;
        for (int i = 0; i < 3; ++i)
            if (x[i] == a[i]) generic = false;
        if (generic) CHECK(multiplicity_at(fam, x) == 1);
    }
    CHECK(multiplicity_at({}, a) == 0);
}

TEST_CASE("verify_cover: all components cover once") {
    for (int d = 1; d <= 4; ++d) {
        Point a(d);
        for (int i = 0; i < d; ++i) a[i] = Rat(i + 1);
        auto cert = verify_cover(all_components(a), 1);
        CHECK(cert.pass);
    }
}

TEST_CASE("verify_cover: single component fails to cover") {
    Point a = pt({0, 0});
    std::vector<StairHalfspace> fam{StairHalfspace(a, IndexSet(2, std::vector<int>{0}))};
    auto cert = verify_cover(fam, 1);
    CHECK(!cert.pass);
    CHECK(cert.violating_cell.has_value());
    CHECK(cert.observed_multiplicity == 0);
}

TEST_CASE("verify_cover respects clip boxes") {
    Point a = pt({0, 0});
    std::vector<StairHalfspace> fam{StairHalfspace(a, IndexSet(2, std::vector<int>{0}))};
    AxisBox clip = AxisBox::bounded(pt({-3, -3}), pt({-1, -1}));
    CHECK(verify_cover(fam, 1, clip).pass);
    AxisBox clip2 = AxisBox::bounded(pt({1, 1}), pt({2, 2}));
    CHECK(verify_cover(fam, 0, clip2).pass);
}

TEST_CASE("volume_in_unit_cube examples") {
    Point a = ptr({Rat(1, 2), Rat(1, 2)});
    StairHalfspace H0(a, IndexSet(2, std::vector<int>{0}));
    CHECK(volume_in_unit_cube(H0) == Rat(1, 4));
    StairHalfspace H02(a, IndexSet(2, std::vector<int>{0, 2}));
    CHECK(volume_in_unit_cube(H02) == Rat(3, 4));
}

TEST_CASE("volumes of an exact cover sum to the multiplicity") {
    std::mt19937 rng(41);
    for (int d = 1; d <= 3; ++d) {
        std::uniform_int_distribution<int> num(0, 4);
        Point a(d);
        for (int i = 0; i < d; ++i) a[i] = Rat(num(rng), 4);
        auto fam = all_components(a);
        REQUIRE(verify_cover(fam, 1, AxisBox::unit_cube(d)).pass);
        Rat total = 0;
        for (const auto& H : fam) total += volume_in_unit_cube(H);
        CHECK(total == Rat(1));
    }
}

TEST_CASE("shs_subset basic sanity") {
    Point a = pt({0, 0});
    StairHalfspace H0(a, IndexSet(2, std::vector<int>{0}));
    StairHalfspace H02(a, IndexSet(2, std::vector<int>{0, 2}));
    CHECK(shs_subset(H0, H02));
    CHECK(!shs_subset(H02, H0));
}

TEST_CASE("AxisBox behavior") {
    AxisBox b = AxisBox::bounded(pt({0, 0}), pt({2, 2}));
    CHECK(b.contains(pt({1, 1})));
    CHECK(b.contains(pt({0, 2})));
    CHECK(!b.contains(pt({3, 1})));
    CHECK(b.is_bounded());
    CHECK(!AxisBox::whole_space(2).is_bounded());
    AxisBox above = b.clipped_above(1, Rat(1));
    CHECK(*above.hi[1] == Rat(1));
    AxisBox below = b.clipped_below(0, Rat(1));
    CHECK(*below.lo[0] == Rat(1));
    CHECK_THROWS_AS(AxisBox::bounded(pt({1}), pt({0})), std::invalid_argument);
}

TEST_CASE("rational string round trips") {
    CHECK(rat_to_string(Rat(3, 4)) == "3/4");
    CHECK(rat_to_string(Rat(-7)) == "-7");
    CHECK(rat_from_string("3/4") == Rat(3, 4));
    CHECK(rat_from_string("-12") == Rat(-12));
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
}
