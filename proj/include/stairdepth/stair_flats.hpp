#pragma once

#include "stairdepth/covering.hpp"

#include <memory>
#include <random>

namespace stairdepth {

enum class FlatForm { Point, Full, Horizontal, Vertical, Diagonal };

struct HalfStairFlat;

/// Recursive axis-aligned analogue of an affine k-flat in R^d.
///  - Point: a single point (k = 0).
///  - Full: all of R^d (k = d).
///  - Horizontal: inner x {z} with inner of order k in R^{d-1}.
///  - Vertical: inner x R with inner of order k-1 in R^{d-1}.
///  - Diagonal: (boundary x (-inf, z]) u (half x {z}) with boundary of order
///    k-1 in R^{d-1} and half a half-flat of order k whose relative boundary
///    is `boundary`.
struct StairFlat {
    FlatForm form;
    int d = 0;
    int k = 0;
    Point point;                                // Point form
    std::shared_ptr<const StairFlat> inner;     // Horizontal / Vertical
    std::shared_ptr<const StairFlat> boundary;  // Diagonal
    std::shared_ptr<const HalfStairFlat> half;  // Diagonal
    Rat z;                                      // Horizontal / Diagonal

    static std::shared_ptr<const StairFlat> make_point(Point p);
    static std::shared_ptr<const StairFlat> make_full(int d);
    static std::shared_ptr<const StairFlat> make_horizontal(
        std::shared_ptr<const StairFlat> inner, Rat z);
    static std::shared_ptr<const StairFlat> make_vertical(
        std::shared_ptr<const StairFlat> inner);
    static std::shared_ptr<const StairFlat> make_diagonal(
        std::shared_ptr<const StairFlat> boundary, std::shared_ptr<const HalfStairFlat> half,
        Rat z);
};

/// Relatively closed half of `carrier` bounded by `boundary`; the chosen side
/// is recorded by witness points in its relative interior.
struct HalfStairFlat {
    std::shared_ptr<const StairFlat> carrier;
    std::shared_ptr<const StairFlat> boundary;
    std::vector<Point> witnesses;
};

bool flat_contains(const StairFlat& f, const Point& x);

/// Requires x on the carrier; true iff x is on the boundary or on the witness
/// side (decided by stair-path crossing tests against the boundary flat).
bool half_contains(const HalfStairFlat& h, const Point& x);

/// Sorted union of disjoint closed parameter intervals within [0, 1].
struct IntervalSet {
    std::vector<std::pair<Rat, Rat>> parts;

    bool empty() const { return parts.empty(); }
    void add(const Rat& lo, const Rat& hi);
    void add(const IntervalSet& other);
    /// Closures of the connected components of this minus other.
    IntervalSet subtract(const IntervalSet& other) const;
};

/// Parameters t in [0,1] with u + t(v-u) in f, for an axis-parallel segment.
IntervalSet flat_segment_params(const StairFlat& f, const Point& u, const Point& v);

/// Trichotomy of a half-flat against a stair-halfspace whose boundary
/// contains the half-flat's relative boundary.
enum class HalfClass { Interior, Boundary, Outside };

HalfClass classify_half(const HalfStairFlat& h, const StairHalfspace& H);

struct GammaDelta {
    int k = 0, d = 0;
    Int gamma;  // C(d-1,k) (d+k+1)/(k+1)
    Int delta;  // C(d-1,k)
};

GammaDelta gamma_delta(int k, int d);

Int binomial(int n, int k);

/// Family of gamma(k,d) stair-halfspaces containing f on their boundaries and
/// covering R^d exactly delta(k,d) times. Supports point and diagonal flats
/// plus horizontal flats (reduced to the inner cover); vertical flats are
/// rejected: no stair-halfspace of Definition-1 form has a vertical line in
/// its boundary, so no such family exists.
CoveringFamily cover_flat(const StairFlat& f);

/// Some point of f.
Point point_on(const StairFlat& f);

/// Small deterministic sample of points on f.
std::vector<Point> flat_samples(const StairFlat& f);

// Fixture library: a stair-line in the plane, a stair-plane
// in R^3, a stair-plane in R^4, and the worked stair-line in R^3 whose cover
// is listed member by member.
std::shared_ptr<const StairFlat> fig6_flat();
std::shared_ptr<const StairFlat> fig7_flat();
std::shared_ptr<const StairFlat> fig8_flat();
std::shared_ptr<const StairFlat> fig9_flat();

/// The five members expected from cover_flat(fig9_flat()), in order.
std::vector<StairHalfspace> fig9_expected_family();

/// Randomly generated flat plus witnesses on the opposite side of its
/// horizontal half (used when extending it to a higher-order carrier).
struct GenFlat {
    std::shared_ptr<const StairFlat> flat;
    std::vector<Point> opp;
    std::shared_ptr<const GenFlat> carrier_info;
};

/// Random diagonal stair-k-flat in R^d with small integer data, 1 <= k <= d-1
/// (k = 0 gives a random point flat).
GenFlat gen_flat(int k, int d, std::mt19937& rng);

}  // namespace stairdepth
