#pragma once

namespace dynprice {

/// Closed billing interval [t1, t2] with t1 < t2.
class TimeInterval {
public:
    TimeInterval(double t1, double t2);

    double t1() const noexcept { return t1_; }
    double t2() const noexcept { return t2_; }

    /// Interval length T0.
    double length() const noexcept { return t2_ - t1_; }

    /// Fundamental frequency f0 = 1 / T0, one cycle per interval.
    double fundamental() const noexcept { return 1.0 / length(); }

    friend bool operator==(const TimeInterval&, const TimeInterval&) = default;

private:
    double t1_;
    double t2_;
};

/// Throws ErrorKind::IntervalMismatch unless a == b.
void require_same_interval(const TimeInterval& a, const TimeInterval& b);

}  // namespace dynprice
