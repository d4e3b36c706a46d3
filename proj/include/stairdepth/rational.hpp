#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace stairdepth {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using Point = std::vector<Rat>;
using Vec = std::vector<Rat>;

inline int dim_of(const Point& p) { return static_cast<int>(p.size()); }

inline void require_same_dim(const Point& a, const Point& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) +
                                    " vs " + std::to_string(b.size()));
}

/// Serializes as "num/den" ("num" when den == 1).
std::string rat_to_string(const Rat& r);

/// Parses "num/den", "num", or a plain decimal integer string.
Rat rat_from_string(const std::string& s);

std::string point_to_string(const Point& p);

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline Rat dot(const Vec& a, const Vec& b) {
    require_same_dim(a, b);
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline bool is_zero_vec(const Vec& v) {
    for (const auto& c : v)
        if (c != 0) return false;
    return true;
}

Int int_pow(const Int& base, unsigned long exp);

}  // namespace stairdepth
