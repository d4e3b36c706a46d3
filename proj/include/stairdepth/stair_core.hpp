#pragma once

#include "stairdepth/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace stairdepth {

/// Proper nonempty subset of {0, ..., d}. Bit i of the mask is component i.
class IndexSet {
  public:
    IndexSet(int d, std::uint32_t mask);
    IndexSet(int d, const std::vector<int>& members);

    int ambient() const { return d_; }
    bool contains(int i) const { return (mask_ >> i) & 1u; }
    std::uint32_t mask() const { return mask_; }
    int size() const;
    std::vector<int> members() const;
    IndexSet complement() const { return IndexSet(d_, full_mask() & ~mask_); }
    IndexSet with(int i) const { return IndexSet(d_, mask_ | (1u << i)); }

    bool operator==(const IndexSet& o) const { return d_ == o.d_ && mask_ == o.mask_; }

  private:
    std::uint32_t full_mask() const { return (1u << (d_ + 1)) - 1u; }
    int d_;
    std::uint32_t mask_;
};

/// Union of components C_i(vertex) for i in the index set.
struct StairHalfspace {
    Point vertex;
    IndexSet index_set;

    StairHalfspace(Point v, IndexSet I);
    int dim() const { return dim_of(vertex); }
};

/// Axis-aligned box; absent endpoints are infinite.
struct AxisBox {
    std::vector<std::optional<Rat>> lo, hi;

    static AxisBox whole_space(int d);
    static AxisBox unit_cube(int d);
    static AxisBox bounded(const Point& low, const Point& high);

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(const Point& x) const;
    bool is_bounded() const;
    /// Keeps everything at or below `bound` on one axis (other axes untouched).
    AxisBox clipped_above(int axis, const Rat& bound) const;
    AxisBox clipped_below(int axis, const Rat& bound) const;
};

/// Axis-parallel polyline between two points, at most d segments.
struct StairPath {
    Point a, b;
    /// Polyline vertices from a to b; consecutive vertices differ in one coordinate.
    std::vector<Point> chain;

    std::vector<std::pair<Point, Point>> segments() const;
};

/// Indices j such that b has type j with respect to a. Never empty.
std::vector<int> type_set(const Point& a, const Point& b);

/// For b off all hyperplanes {x_i = a_i} the type is unique: the largest j
/// with b_j > a_j, or 0. Also well defined (and consistent with type_set)
/// whenever ties are absent.
int generic_type(const Point& a, const Point& b);

/// Product-interval form of the component C_i(a).
AxisBox component_box(const Point& a, int i);

bool shs_contains(const StairHalfspace& H, const Point& x);

/// True iff x lies in H and some +-gap perturbation of a subset of coordinates
/// escapes H. Requires 0 < gap < |x_i - vertex_i| for every i where they differ.
bool shs_boundary_contains(const StairHalfspace& H, const Point& x, const Rat& gap);

/// Same, with a safe gap derived from x and the vertex.
bool shs_boundary_contains(const StairHalfspace& H, const Point& x);

StairPath stair_path(const Point& a, const Point& b);

/// Combinatorially equivalent stair-halfspace with vertex b. Requires
/// b_i < vertex_i for axes i in the index set and b_i > vertex_i otherwise,
/// which guarantees the result contains H.
StairHalfspace translate_outwards(const StairHalfspace& H, const Point& b);

int multiplicity_at(const std::vector<StairHalfspace>& family, const Point& x);

/// Per-axis breakpoints plus one strictly interior representative per open cell.
class CellDecomposition {
  public:
    CellDecomposition(const std::vector<StairHalfspace>& family, const AxisBox& clip);

    int dim() const { return static_cast<int>(reps_.size()); }
    /// Calls fn(rep) for every open cell of the decomposition (restricted to
    /// the clip region). Stops early if fn returns false.
    template <typename Fn>
    void for_each_cell(Fn&& fn) const {
        Point rep(dim());
        iterate(0, rep, fn);
    }
    /// Calls fn(rep, volume) for every bounded cell. Requires a bounded clip.
    template <typename Fn>
    void for_each_bounded_cell(Fn&& fn) const {
        Point rep(dim());
        Rat vol = 1;
        iterate_vol(0, rep, vol, fn);
    }

    const std::vector<Rat>& reps(int axis) const { return reps_[axis]; }

  private:
    template <typename Fn>
    bool iterate(int axis, Point& rep, Fn& fn) const {
        if (axis == dim()) return fn(const_cast<const Point&>(rep));
        for (const Rat& r : reps_[axis]) {
            rep[axis] = r;
            if (!iterate(axis + 1, rep, fn)) return false;
        }
        return true;
    }
    template <typename Fn>
    bool iterate_vol(int axis, Point& rep, Rat& vol, Fn& fn) const {
        if (axis == dim()) return fn(const_cast<const Point&>(rep), const_cast<const Rat&>(vol));
        for (std::size_t i = 0; i < reps_[axis].size(); ++i) {
            rep[axis] = reps_[axis][i];
            Rat saved = vol;
            vol *= lengths_[axis][i];
            if (!iterate_vol(axis + 1, rep, vol, fn)) return false;
            vol = saved;
        }
        return true;
    }

    std::vector<std::vector<Rat>> reps_;
    std::vector<std::vector<Rat>> lengths_;  // cell extent per axis (bounded clip only)
};

struct CoverCertificate {
    bool pass = false;
    long long cells_checked = 0;
    std::optional<Point> violating_cell;
    int observed_multiplicity = -1;
    std::string message() const;
};

/// Checks that the family covers the clip region exactly `delta` times off
/// member boundaries. Exact: membership in every component is constant on
/// each open cell of the joint decomposition.
CoverCertificate verify_cover(const std::vector<StairHalfspace>& family, int delta,
                              const AxisBox& clip);

/// verify_cover over all of R^d.
CoverCertificate verify_cover(const std::vector<StairHalfspace>& family, int delta);

/// Exact volume of H intersected with a bounded box.
Rat clipped_volume(const StairHalfspace& H, const AxisBox& box);

Rat volume_in_unit_cube(const StairHalfspace& H);

/// Exact subset check over the joint cell decomposition.
bool shs_subset(const StairHalfspace& inner_hs, const StairHalfspace& outer_hs);

}  // namespace stairdepth
