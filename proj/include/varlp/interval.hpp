#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace varlp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed bounded interval [lo, hi].
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return x >= lo && x <= hi; }
    bool contains(const Interval& other) const {
        return other.lo >= lo && other.hi <= hi;
    }
    bool valid() const { return std::isfinite(lo) && std::isfinite(hi) && hi > lo; }
};

inline Interval intersect(const Interval& a, const Interval& b) {
    return Interval{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

inline bool empty_intersection(const Interval& a, const Interval& b) {
    return std::max(a.lo, b.lo) >= std::min(a.hi, b.hi);
}

enum class DomainKind { bounded, halfline, line };

// Working domain: a bounded box, the half-line [0,inf) or the full line.
// For unbounded kinds `box` is the working window used by grid-based scans.
struct Domain {
    DomainKind kind = DomainKind::bounded;
    Interval box{0.0, 1.0};

    bool contains(double x) const {
        switch (kind) {
        case DomainKind::bounded: return box.contains(x);
        case DomainKind::halfline: return x >= 0.0;
        case DomainKind::line: return true;
        }
        return false;
    }
    double clamp_lo(double x) const {
        return kind == DomainKind::halfline ? std::max(x, 0.0)
             : kind == DomainKind::bounded ? std::max(x, box.lo)
                                           : x;
    }
    double clamp_hi(double x) const {
        return kind == DomainKind::bounded ? std::min(x, box.hi) : x;
    }
};

inline const char* to_string(DomainKind k) {
    switch (k) {
    case DomainKind::bounded: return "bounded";
    case DomainKind::halfline: return "halfline";
    case DomainKind::line: return "line";
    }
    return "?";
}

} // namespace varlp
