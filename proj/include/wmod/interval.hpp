#pragma once

#include <cmath>
#include <stdexcept>

namespace wmod {

/// Closed subinterval of [-1, 1].  An empty interval is representable and
/// distinct from a degenerate (single point) one.
struct Interval {
    double lo = -1.0;
    double hi = 1.0;

    Interval() = default;
    Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
        if (lo > hi) throw std::invalid_argument("Interval: lo > hi");
    }

    static Interval whole() { return Interval(-1.0, 1.0); }
    static Interval empty() {
        Interval s;
        s.lo = 1.0;
        s.hi = -1.0;  // only constructible here
        return s;
    }

    bool is_empty() const { return lo > hi; }
    bool degenerate() const { return lo == hi; }
    double length() const { return is_empty() ? 0.0 : hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return !is_empty() && x >= lo && x <= hi; }
    bool contains(const Interval& other) const {
        return other.is_empty() || (!is_empty() && lo <= other.lo && other.hi <= hi);
    }
};

} // namespace wmod
