#ifndef PKALIGN_INTERVAL_HPP
#define PKALIGN_INTERVAL_HPP

#include <compare>
#include <ostream>
#include <string>

#include "pkalign/errors.hpp"

namespace pkalign {

/// Closed interval of 1-based base positions. The empty interval is a
/// distinguished value (not encoded as [i,i-1] arithmetic), so all empty
/// intervals compare equal and memo keys stay canonical.
struct Interval {
    int lo = 0;
    int hi = -1;

    static constexpr Interval none() { return {}; }

    static Interval span(int lo, int hi) {
        if (lo > hi) fail(Errc::out_of_range, "interval [" + std::to_string(lo) + "," +
                                                  std::to_string(hi) + "] is inverted");
        if (lo < 1) fail(Errc::out_of_range, "interval start below 1");
        return Interval{lo, hi};
    }

    /// Canonicalizing constructor for computed bounds: lo > hi yields none().
    static constexpr Interval make(int lo, int hi) {
        return lo > hi ? Interval{} : Interval{lo, hi};
    }

    constexpr bool empty() const { return hi < lo; }
    constexpr int size() const { return empty() ? 0 : hi - lo + 1; }
    constexpr bool contains(int p) const { return !empty() && lo <= p && p <= hi; }
    constexpr bool single() const { return size() == 1; }

    friend constexpr auto operator<=>(const Interval&, const Interval&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    if (iv.empty()) return os << "[]";
    return os << '[' << iv.lo << ',' << iv.hi << ']';
}

} // namespace pkalign

#endif
