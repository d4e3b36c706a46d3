#include <doctest.h>

#include "stairdepth/covering.hpp"

#include <random>

using namespace stairdepth;

namespace {

Point random_unit_point(std::mt19937& rng, int d) {
    std::uniform_int_distribution<int> num(0, 20);
    Point p(d);
    for (int i = 0; i < d; ++i) p[i] = Rat(num(rng), 20);
    return p;
}

}  // namespace

TEST_CASE("cover_pair base case example") {
    Point p{Rat(3, 10), Rat(2, 10)}, q{Rat(7, 10), Rat(8, 10)};
    CoveringFamily fam = cover_pair(p, q);
    REQUIRE(fam.members.size() == 2);
    CHECK(fam.delta == 1);
    Point a{Rat(3, 10), Rat(8, 10)};
    CHECK(fam.members[0].vertex == a);
    CHECK(fam.members[0].index_set == IndexSet(2, std::vector<int>{0, 2}));
    CHECK(fam.members[1].vertex == a);
    CHECK(fam.members[1].index_set == IndexSet(2, std::vector<int>{1}));
    CHECK(check_family(fam).pass);
}

TEST_CASE("cover_pair base case, reversed horizontal order") {
    Point p{Rat(7, 10), Rat(2, 10)}, q{Rat(3, 10), Rat(8, 10)};
    CoveringFamily fam = cover_pair(p, q);
    REQUIRE(fam.members.size() == 2);
    CHECK(fam.members[0].index_set == IndexSet(2, std::vector<int>{0}));
    CHECK(fam.members[1].index_set == IndexSet(2, std::vector<int>{1, 2}));
    CHECK(check_family(fam).pass);
}

TEST_CASE("cover_pair counts") {
    std::mt19937 rng(43);
    for (int d = 2; d <= 5; ++d) {
        Point p = random_unit_point(rng, d), q = random_unit_point(rng, d);
        CoveringFamily fam = cover_pair(p, q);
        CHECK(static_cast<int>(fam.members.size()) == (d - 1) * (d + 2) / 2);
        CHECK(fam.delta == d - 1);
    }
    CHECK_THROWS_AS(cover_pair(Point{Rat(0)}, Point{Rat(1)}), std::invalid_argument);
}

TEST_CASE("cover_pair random families pass all checks, d=2..4") {
    std::mt19937 rng(47);
    for (int d = 2; d <= 4; ++d) {
        for (int it = 0; it < 12; ++it) {
            Point p = random_unit_point(rng, d), q = random_unit_point(rng, d);
            CoveringFamily fam = cover_pair(p, q);
            auto cert = check_family(fam);
            CHECK_MESSAGE(cert.pass, cert.message);
        }
    }
}

TEST_CASE("removing a member breaks the cover") {
    Point p{Rat(1, 4), Rat(1, 4), Rat(1, 4)}, q{Rat(3, 4), Rat(3, 4), Rat(3, 4)};
    CoveringFamily fam = cover_pair(p, q);
    fam.members.pop_back();
    CHECK(!check_family(fam).pass);
}

TEST_CASE("exact-cover volume identity and pigeonhole") {
    std::mt19937 rng(53);
    for (int d = 2; d <= 4; ++d) {
        for (int it = 0; it < 5; ++it) {
            Point p = random_unit_point(rng, d), q = random_unit_point(rng, d);
            CoveringFamily fam = cover_pair(p, q);
            Rat total = 0;
            for (const auto& H : fam.members) total += volume_in_unit_cube(H);
            CHECK(total == Rat(d - 1));
            std::size_t i = min_volume_member(fam);
            CHECK(volume_in_unit_cube(fam.members[i]) <= Rat(2, d + 2));
        }
    }
}

TEST_CASE("induction split: lower and upper halves") {
    std::mt19937 rng(59);
    for (int d = 3; d <= 4; ++d) {
        Point p = random_unit_point(rng, d), q = random_unit_point(rng, d);
        if (p[d - 1] > q[d - 1]) std::swap(p, q);
        CoveringFamily fam = cover_pair(p, q);
        // First (d-2)(d+1)/2 members are the extrusions, the last d the
        // corner batch.
        std::size_t n1 = static_cast<std::size_t>((d - 2) * (d + 1) / 2);
        std::vector<StairHalfspace> extruded(fam.members.begin(), fam.members.begin() + n1);
        std::vector<StairHalfspace> corner(fam.members.begin() + n1, fam.members.end());
        AxisBox lower = AxisBox::whole_space(d).clipped_above(d - 1, q[d - 1] - Rat(1, 1000));
        AxisBox upper = AxisBox::whole_space(d).clipped_below(d - 1, q[d - 1] + Rat(1, 1000));
        CHECK(verify_cover(extruded, d - 2, lower).pass);
        CHECK(verify_cover(extruded, 0, upper).pass);
        CHECK(verify_cover(corner, 1, lower).pass);
        CHECK(verify_cover(corner, d - 1, upper).pass);
    }
}

TEST_CASE("degenerate anchors are accepted") {
    Point p{Rat(1, 2), Rat(1, 2), Rat(1, 2)};
    CoveringFamily fam = cover_pair(p, p);
    CHECK(verify_cover(fam.members, fam.delta).pass);
    for (const auto& H : fam.members) CHECK(shs_contains(H, p));
}
