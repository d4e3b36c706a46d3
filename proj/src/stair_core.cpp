#include "stairdepth/stair_core.hpp"

#include <algorithm>
#include <set>

namespace stairdepth {

IndexSet::IndexSet(int d, std::uint32_t mask) : d_(d), mask_(mask) {
    if (d < 1 || d > 30) throw std::invalid_argument("IndexSet: bad dimension");
    if (mask == 0) throw std::invalid_argument("IndexSet: empty index set");
    if ((mask & ~full_mask()) != 0)
        throw std::invalid_argument("IndexSet: index out of range 0..d");
    if (mask == full_mask())
        throw std::invalid_argument("IndexSet: index set must be a proper subset of {0..d}");
}

IndexSet::IndexSet(int d, const std::vector<int>& members)
    : IndexSet(d, [&] {
          std::uint32_t m = 0;
          for (int i : members) {
              if (i < 0 || i > d) throw std::invalid_argument("IndexSet: index out of range");
              m |= (1u << i);
          }
          return m;
      }()) {}

int IndexSet::size() const {
    int n = 0;
    for (int i = 0; i <= d_; ++i)
        if (contains(i)) ++n;
    return n;
}

std::vector<int> IndexSet::members() const {
    std::vector<int> out;
    for (int i = 0; i <= d_; ++i)
        if (contains(i)) out.push_back(i);
    return out;
}

StairHalfspace::StairHalfspace(Point v, IndexSet I) : vertex(std::move(v)), index_set(I) {
    if (dim_of(vertex) != I.ambient())
        throw std::invalid_argument("StairHalfspace: vertex dimension != index set ambient");
}

AxisBox AxisBox::whole_space(int d) {
    AxisBox b;
    b.lo.resize(d);
    b.hi.resize(d);
    return b;
}

AxisBox AxisBox::unit_cube(int d) {
    AxisBox b = whole_space(d);
    for (int i = 0; i < d; ++i) {
        b.lo[i] = Rat(0);
        b.hi[i] = Rat(1);
    }
    return b;
}

AxisBox AxisBox::bounded(const Point& low, const Point& high) {
    require_same_dim(low, high);
    AxisBox b = whole_space(dim_of(low));
    for (int i = 0; i < dim_of(low); ++i) {
        if (low[i] > high[i]) throw std::invalid_argument("AxisBox: lower > upper");
        b.lo[i] = low[i];
        b.hi[i] = high[i];
    }
    return b;
}

bool AxisBox::contains(const Point& x) const {
    if (dim_of(x) != dim()) throw std::invalid_argument("AxisBox: dimension mismatch");
    for (int i = 0; i < dim(); ++i) {
        if (lo[i] && x[i] < *lo[i]) return false;
        if (hi[i] && x[i] > *hi[i]) return false;
    }
    return true;
}

bool AxisBox::is_bounded() const {
    for (int i = 0; i < dim(); ++i)
        if (!lo[i] || !hi[i]) return false;
    return true;
}

AxisBox AxisBox::clipped_above(int axis, const Rat& bound) const {
    AxisBox b = *this;
    if (!b.hi[axis] || *b.hi[axis] > bound) b.hi[axis] = bound;
    return b;
}

AxisBox AxisBox::clipped_below(int axis, const Rat& bound) const {
    AxisBox b = *this;
    if (!b.lo[axis] || *b.lo[axis] < bound) b.lo[axis] = bound;
    return b;
}

std::vector<std::pair<Point, Point>> StairPath::segments() const {
    std::vector<std::pair<Point, Point>> out;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) out.emplace_back(chain[i], chain[i + 1]);
    return out;
}

std::vector<int> type_set(const Point& a, const Point& b) {
    require_same_dim(a, b);
    const int d = dim_of(a);
    std::vector<int> out;
    // suffix_le[j]: b_i <= a_i for all i > j (1-based axes)
    bool suffix_ok = true;
    std::vector<bool> suffix_le(d + 1);
    for (int j = d; j >= 1; --j) {
        suffix_le[j] = suffix_ok;
        if (b[j - 1] > a[j - 1]) suffix_ok = false;
    }
    if (suffix_ok) out.push_back(0);  // b_i <= a_i for all i
    for (int j = 1; j <= d; ++j)
        if (b[j - 1] >= a[j - 1] && suffix_le[j]) out.push_back(j);
    return out;
}

int generic_type(const Point& a, const Point& b) {
    require_same_dim(a, b);
    for (int j = dim_of(a); j >= 1; --j)
        if (b[j - 1] > a[j - 1]) return j;
    return 0;
}

AxisBox component_box(const Point& a, int i) {
    const int d = dim_of(a);
    if (i < 0 || i > d) throw std::invalid_argument("component_box: index out of range");
    AxisBox box = AxisBox::whole_space(d);
    if (i == 0) {
        for (int j = 0; j < d; ++j) box.hi[j] = a[j];
    } else {
        box.lo[i - 1] = a[i - 1];
        for (int j = i; j < d; ++j) box.hi[j] = a[j];
    }
    return box;
}

bool shs_contains(const StairHalfspace& H, const Point& x) {
    require_same_dim(H.vertex, x);
    const Point& a = H.vertex;
    const int d = H.dim();
    // x lies in component j iff x_j >= a_j and x_i <= a_i for all i > j
    // (component 0: x_i <= a_i for all i). Scan j from d down, maintaining
    // the suffix condition.
    bool suffix_le = true;
    for (int j = d; j >= 1; --j) {
        if (suffix_le && x[j - 1] >= a[j - 1] && H.index_set.contains(j)) return true;
        if (x[j - 1] > a[j - 1]) suffix_le = false;
    }
    return suffix_le && H.index_set.contains(0);
}

bool shs_boundary_contains(const StairHalfspace& H, const Point& x, const Rat& gap) {
    require_same_dim(H.vertex, x);
    if (gap <= 0) throw std::invalid_argument("shs_boundary_contains: gap must be positive");
    for (int i = 0; i < H.dim(); ++i) {
        Rat diff = rat_abs(x[i] - H.vertex[i]);
        if (diff != 0 && gap >= diff)
            throw std::invalid_argument(
                "shs_boundary_contains: gap too large relative to coordinate differences");
    }
    if (!shs_contains(H, x)) return false;
    const int d = H.dim();
    std::vector<int> delta(d, -1);  // -1, 0, +1 per axis
    Point y(d);
    while (true) {
        for (int i = 0; i < d; ++i) y[i] = x[i] + Rat(delta[i]) * gap;
        if (!shs_contains(H, y)) return true;
        int i = 0;
        while (i < d && delta[i] == 1) delta[i++] = -1;
        if (i == d) break;
        ++delta[i];
    }
    return false;
}

bool shs_boundary_contains(const StairHalfspace& H, const Point& x) {
    Rat gap(1, 2);
    for (int i = 0; i < H.dim(); ++i) {
        Rat diff = rat_abs(x[i] - H.vertex[i]);
        if (diff != 0 && diff / 2 < gap) gap = diff / 2;
    }
    return shs_boundary_contains(H, x, gap);
}

namespace {

// Polyline from x to y, varying coordinates dd-1, dd-2, ..., 0 in that order.
std::vector<Point> stair_chain(const Point& x, const Point& y, int dd) {
    if (dd == 1) return {x, y};
    if (x[dd - 1] == y[dd - 1]) return stair_chain(x, y, dd - 1);
    if (x[dd - 1] < y[dd - 1]) {
        Point xp = x;
        xp[dd - 1] = y[dd - 1];
        std::vector<Point> rest = stair_chain(xp, y, dd - 1);
        rest.insert(rest.begin(), x);
        return rest;
    }
    std::vector<Point> rev = stair_chain(y, x, dd);
    std::reverse(rev.begin(), rev.end());
    return rev;
}

}  // namespace

StairPath stair_path(const Point& a, const Point& b) {
    require_same_dim(a, b);
    StairPath p;
    p.a = a;
    p.b = b;
    std::vector<Point> chain = stair_chain(a, b, dim_of(a));
    // drop zero-length segments
    p.chain.push_back(chain.front());
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (chain[i] != p.chain.back()) p.chain.push_back(chain[i]);
    return p;
}

StairHalfspace translate_outwards(const StairHalfspace& H, const Point& b) {
    require_same_dim(H.vertex, b);
    for (int i = 1; i <= H.dim(); ++i) {
        if (H.index_set.contains(i)) {
            if (!(b[i - 1] < H.vertex[i - 1]))
                throw std::invalid_argument("translate_outwards: axis " + std::to_string(i) +
                                            " must move down (index in set)");
        } else if (!(b[i - 1] > H.vertex[i - 1])) {
            throw std::invalid_argument("translate_outwards: axis " + std::to_string(i) +
                                        " must move up (index not in set)");
        }
    }
    return StairHalfspace(b, H.index_set);
}

int multiplicity_at(const std::vector<StairHalfspace>& family, const Point& x) {
    int n = 0;
    for (const auto& H : family)
        if (shs_contains(H, x)) ++n;
    return n;
}

CellDecomposition::CellDecomposition(const std::vector<StairHalfspace>& family,
                                     const AxisBox& clip) {
    const int d = clip.dim();
    for (const auto& H : family)
        if (H.dim() != d) throw std::invalid_argument("CellDecomposition: dimension mismatch");
    reps_.resize(d);
    lengths_.resize(d);
    for (int axis = 0; axis < d; ++axis) {
        std::set<Rat> brk;
        if (clip.lo[axis]) brk.insert(*clip.lo[axis]);
        if (clip.hi[axis]) brk.insert(*clip.hi[axis]);
        for (const auto& H : family) {
            const Rat& c = H.vertex[axis];
            bool inside = (!clip.lo[axis] || c > *clip.lo[axis]) &&
                          (!clip.hi[axis] || c < *clip.hi[axis]);
            if (inside) brk.insert(c);
        }
        std::vector<Rat> b(brk.begin(), brk.end());
        auto& reps = reps_[axis];
        auto& len = lengths_[axis];
        if (b.empty()) {
            reps.push_back(Rat(0));
            len.push_back(Rat(0));  // unbounded; volume iteration unsupported
            continue;
        }
        if (!clip.lo[axis]) {
            reps.push_back(b.front() - 1);
            len.push_back(Rat(0));
        }
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
            reps.push_back((b[i] + b[i + 1]) / 2);
            len.push_back(b[i + 1] - b[i]);
        }
        if (!clip.hi[axis]) {
            reps.push_back(b.back() + 1);
            len.push_back(Rat(0));
        }
        if (reps.empty()) {
            // clip is a single hyperplane slice on this axis; degenerate
            reps.push_back(b.front());
            len.push_back(Rat(0));
        }
    }
}

std::string CoverCertificate::message() const {
    if (pass) return "pass (" + std::to_string(cells_checked) + " cells)";
    std::string m = "fail";
    if (violating_cell)
        m += " at cell representative " + point_to_string(*violating_cell) +
             " with multiplicity " + std::to_string(observed_multiplicity);
    return m;
}

CoverCertificate verify_cover(const std::vector<StairHalfspace>& family, int delta,
                              const AxisBox& clip) {
    CoverCertificate cert;
    if (family.empty()) throw std::invalid_argument("verify_cover: empty family");
    const int d = clip.dim();
    const int F = static_cast<int>(family.size());
    CellDecomposition cells(family, clip);

    // above[axis][rep][member]: rep strictly exceeds the member's vertex
    // coordinate. Representatives never coincide with vertex coordinates, so
    // cell membership reduces to these booleans.
    std::vector<std::vector<std::vector<char>>> above(d);
    for (int axis = 0; axis < d; ++axis) {
        const auto& reps = cells.reps(axis);
        above[axis].resize(reps.size(), std::vector<char>(F));
        for (std::size_t r = 0; r < reps.size(); ++r)
            for (int m = 0; m < F; ++m)
                above[axis][r][m] = reps[r] > family[m].vertex[axis] ? 1 : 0;
    }

    std::vector<std::size_t> idx(d, 0);
    bool done = false;
    while (!done) {
        int mult = 0;
        for (int m = 0; m < F; ++m) {
            int type = 0;
            for (int axis = d - 1; axis >= 0; --axis) {
                if (above[axis][idx[axis]][m]) {
                    type = axis + 1;
                    break;
                }
            }
            if (family[m].index_set.contains(type)) ++mult;
        }
        ++cert.cells_checked;
        if (mult != delta) {
            Point rep(d);
            for (int axis = 0; axis < d; ++axis) rep[axis] = cells.reps(axis)[idx[axis]];
            cert.violating_cell = rep;
            cert.observed_multiplicity = mult;
            cert.pass = false;
            return cert;
        }
        int axis = 0;
        while (axis < d && idx[axis] + 1 == cells.reps(axis).size()) idx[axis++] = 0;
        if (axis == d)
            done = true;
        else
            ++idx[axis];
    }
    cert.pass = true;
    return cert;
}

CoverCertificate verify_cover(const std::vector<StairHalfspace>& family, int delta) {
    if (family.empty()) throw std::invalid_argument("verify_cover: empty family");
    return verify_cover(family, delta, AxisBox::whole_space(family.front().dim()));
}

Rat clipped_volume(const StairHalfspace& H, const AxisBox& box) {
    if (!box.is_bounded()) throw std::invalid_argument("clipped_volume: box must be bounded");
    CellDecomposition cells({H}, box);
    Rat total = 0;
    cells.for_each_bounded_cell([&](const Point& rep, const Rat& vol) {
        if (shs_contains(H, rep)) total += vol;
        return true;
    });
    return total;
}

Rat volume_in_unit_cube(const StairHalfspace& H) {
    return clipped_volume(H, AxisBox::unit_cube(H.dim()));
}

bool shs_subset(const StairHalfspace& inner_hs, const StairHalfspace& outer_hs) {
    require_same_dim(inner_hs.vertex, outer_hs.vertex);
    CellDecomposition cells({inner_hs, outer_hs}, AxisBox::whole_space(inner_hs.dim()));
    bool ok = true;
    cells.for_each_cell([&](const Point& rep) {
        if (shs_contains(inner_hs, rep) && !shs_contains(outer_hs, rep)) {
            ok = false;
            return false;
        }
        return true;
    });
    return ok;
}

}  // namespace stairdepth
