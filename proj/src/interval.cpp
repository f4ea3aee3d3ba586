#include "dynprice/interval.hpp"

#include "dynprice/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace dynprice {

TimeInterval::TimeInterval(double t1, double t2) : t1_(t1), t2_(t2) {
    if (!std::isfinite(t1) || !std::isfinite(t2) || !(t1 < t2)) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("time interval [{}, {}] must satisfy t1 < t2", t1, t2));
    }
}

void require_same_interval(const TimeInterval& a, const TimeInterval& b) {
    if (a != b) {
        throw Error(ErrorKind::IntervalMismatch,
                    fmt::format("curves live on different intervals: [{}, {}] vs [{}, {}]",
                                a.t1(), a.t2(), b.t1(), b.t2()));
    }
}

}  // namespace dynprice
