#include "stairdepth/covering.hpp"

namespace stairdepth {

namespace {

std::vector<StairHalfspace> cover_pair_members(const Point& p, const Point& q) {
    const int d = dim_of(p);
    if (p[d - 1] > q[d - 1]) return cover_pair_members(q, p);
    if (d == 2) {
        Point a{p[0], q[1]};
        if (p[0] <= q[0])
            return {StairHalfspace(a, IndexSet(2, std::vector<int>{0, 2})),
                    StairHalfspace(a, IndexSet(2, std::vector<int>{1}))};
        return {StairHalfspace(a, IndexSet(2, std::vector<int>{0})),
                StairHalfspace(a, IndexSet(2, std::vector<int>{1, 2}))};
    }
    // Extrude the (d-1)-dimensional family to height q_d: each member
    // H x (-infty, q_d] is again a stair-halfspace with the same index set.
    Point pp(p.begin(), p.end() - 1), qq(q.begin(), q.end() - 1);
    std::vector<StairHalfspace> out;
    for (const auto& H : cover_pair_members(pp, qq)) {
        Point v = H.vertex;
        v.push_back(q[d - 1]);
        out.emplace_back(v, IndexSet(d, H.index_set.mask()));
    }
    // Second batch at the corner vertex: all components get the upper slab
    // C_d added, except the one whose type matches p.
    int m = 0;
    for (int j = d - 1; j >= 1; --j)
        if (p[j - 1] <= q[j - 1]) {
            m = j;
            break;
        }
    Point a = pp;
    a.push_back(q[d - 1]);
    for (int i = 0; i <= d - 1; ++i) {
        if (i == m)
            out.emplace_back(a, IndexSet(d, std::vector<int>{i}));
        else
            out.emplace_back(a, IndexSet(d, std::vector<int>{i, d}));
    }
    return out;
}

}  // namespace

CoveringFamily cover_pair(const Point& p, const Point& q) {
    require_same_dim(p, q);
    const int d = dim_of(p);
    if (d < 2) throw std::invalid_argument("cover_pair: requires d >= 2");
    CoveringFamily fam;
    fam.members = cover_pair_members(p, q);
    fam.delta = d - 1;
    fam.anchors = {p, q};
    if (static_cast<int>(fam.members.size()) != (d - 1) * (d + 2) / 2)
        throw std::logic_error("cover_pair: unexpected family size");
    return fam;
}

FamilyCertificate check_family(const CoveringFamily& fam) {
    FamilyCertificate cert;
    cert.cover = verify_cover(fam.members, fam.delta);
    if (!cert.cover.pass) {
        cert.message = "cover check failed: " + cert.cover.message();
        return cert;
    }
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        for (std::size_t j = 0; j < fam.anchors.size(); ++j) {
            const Point& x = fam.anchors[j];
            if (!shs_contains(fam.members[i], x)) {
                cert.message = "member " + std::to_string(i) + " does not contain anchor " +
                               std::to_string(j);
                return cert;
            }
            if (!shs_boundary_contains(fam.members[i], x)) {
                cert.message = "anchor " + std::to_string(j) +
                               " is not on the boundary of member " + std::to_string(i);
                return cert;
            }
        }
    }
    cert.pass = true;
    cert.message = "pass";
    return cert;
}

std::size_t min_volume_member(const CoveringFamily& fam) {
    if (fam.members.empty()) throw std::invalid_argument("min_volume_member: empty family");
    std::size_t best = 0;
    Rat best_vol = volume_in_unit_cube(fam.members[0]);
    for (std::size_t i = 1; i < fam.members.size(); ++i) {
        Rat v = volume_in_unit_cube(fam.members[i]);
        if (v < best_vol) {
            best_vol = v;
            best = i;
        }
    }
    return best;
}

}  // namespace stairdepth
