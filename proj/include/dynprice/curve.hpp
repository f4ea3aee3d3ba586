#pragma once

#include "dynprice/interval.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace dynprice {

/// One cosine/sine pair at harmonic index n >= 1, i.e. frequency n * f0.
struct Harmonic {
    int n = 0;
    double cos_amp = 0.0;
    double sin_amp = 0.0;

    friend bool operator==(const Harmonic&, const Harmonic&) = default;
};

/// mean + sum_n [cos_amp cos(2 pi n f0 t) + sin_amp sin(2 pi n f0 t)].
/// Harmonics are kept sorted by n with distinct indices.
struct TrigPoly {
    double mean = 0.0;
    std::vector<Harmonic> harmonics;
};

/// Uniform samples on the closed grid t_k = t1 + k T0 / (count - 1).
/// Each value is the averaged power over one sampling period.
struct Sampled {
    std::vector<double> values;
};

/// A load or generation curve, an element of L2[t1, t2]. Immutable.
class LoadCurve {
public:
    static LoadCurve trig(const TimeInterval& interval, double mean,
                          std::vector<Harmonic> harmonics = {});
    static LoadCurve sampled(const TimeInterval& interval, std::vector<double> values);
    static LoadCurve constant(const TimeInterval& interval, double value);
    static LoadCurve zero(const TimeInterval& interval) { return constant(interval, 0.0); }

    const TimeInterval& interval() const noexcept { return interval_; }

    bool is_trig() const noexcept { return std::holds_alternative<TrigPoly>(body_); }
    bool is_sampled() const noexcept { return std::holds_alternative<Sampled>(body_); }

    const TrigPoly& trig_body() const;
    const Sampled& sampled_body() const;

    /// Highest harmonic index of a TrigPoly; 0 for constants and Sampled curves.
    int max_harmonic() const noexcept;
    /// Number of samples of a Sampled curve; 0 for TrigPoly.
    std::size_t sample_count() const noexcept;

    /// Point evaluation. Sampled curves interpolate linearly between grid points.
    double operator()(double t) const;

private:
    LoadCurve(const TimeInterval& interval, std::variant<TrigPoly, Sampled> body)
        : interval_(interval), body_(std::move(body)) {}

    TimeInterval interval_;
    std::variant<TrigPoly, Sampled> body_;
};

/// Time of grid point k on the closed uniform grid with `count` points.
double grid_time(const TimeInterval& interval, std::size_t count, std::size_t k);

/// Evaluates p on the closed uniform grid with `count` points (count >= 2).
LoadCurve resample(const LoadCurve& p, std::size_t count);

LoadCurve add(const LoadCurve& p, const LoadCurve& q);
LoadCurve scale(double a, const LoadCurve& p);

inline LoadCurve operator+(const LoadCurve& p, const LoadCurve& q) { return add(p, q); }
inline LoadCurve operator*(double a, const LoadCurve& p) { return scale(a, p); }
inline LoadCurve operator-(const LoadCurve& p) { return scale(-1.0, p); }
inline LoadCurve operator-(const LoadCurve& p, const LoadCurve& q) { return add(p, -q); }

/// Integral of p * q over the interval: closed form for two TrigPoly curves,
/// composite trapezoid rule once either side is Sampled.
double inner_product(const LoadCurve& p, const LoadCurve& q);
double norm(const LoadCurve& p);
double distance(const LoadCurve& p, const LoadCurve& q);

/// Integral of p over the interval (energy for a load curve).
double integral(const LoadCurve& p);

/// L2 identification: distance(p, q) < 1e-9 * max(1, ||p||).
bool approx_equal(const LoadCurve& p, const LoadCurve& q);

}  // namespace dynprice
