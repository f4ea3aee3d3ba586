#include "dynprice/kernels.hpp"

#include "dynprice/error.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dynprice::kernels {

namespace {

// Phase of harmonic n at grid point k of an M-interval closed grid. The grid
// part is reduced modulo M so that large n * k stay exact.
struct PhaseTable {
    double offset;  // 2 pi t1 / T0
    std::int64_t intervals;

    double operator()(std::int64_t n, std::int64_t k) const {
        const auto r = (n * k) % intervals;
        return static_cast<double>(n) * offset +
               2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(intervals);
    }
};

PhaseTable make_phase(const TimeInterval& interval, std::size_t count) {
    return {2.0 * std::numbers::pi * interval.t1() / interval.length(),
            static_cast<std::int64_t>(count) - 1};
}

void check_grid(std::size_t count) {
    if (count < 2) {
        throw Error(ErrorKind::InvalidArgument, "closed grid needs at least 2 points");
    }
}

CoefficientPair coefficient_at(std::span<const double> values, const PhaseTable& phase,
                               std::int64_t n) {
    const auto last = static_cast<std::int64_t>(values.size()) - 1;
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::int64_t k = 0; k <= last; ++k) {
        const double w = (k == 0 || k == last) ? 0.5 : 1.0;
        const double angle = phase(n, k);
        sum_a += w * values[k] * std::cos(angle);
        sum_b += w * values[k] * std::sin(angle);
    }
    const double scale = 2.0 / static_cast<double>(last);
    return {scale * sum_a, scale * sum_b};
}

double value_at(const TrigPoly& poly, const PhaseTable& phase, std::int64_t k) {
    double v = poly.mean;
    for (const auto& h : poly.harmonics) {
        const double angle = phase(h.n, k);
        v += h.cos_amp * std::cos(angle) + h.sin_amp * std::sin(angle);
    }
    return v;
}

}  // namespace

double trapezoid(std::span<const double> values, double step) {
    check_grid(values.size());
    double sum = 0.5 * (values.front() + values.back());
    for (std::size_t k = 1; k + 1 < values.size(); ++k) {
        sum += values[k];
    }
    return step * sum;
}

std::vector<CoefficientPair> fourier_coefficients_serial(std::span<const double> values,
                                                         const TimeInterval& interval,
                                                         int order) {
    check_grid(values.size());
    const auto phase = make_phase(interval, values.size());
    std::vector<CoefficientPair> out(order > 0 ? order : 0);
    for (int n = 1; n <= order; ++n) {
        out[n - 1] = coefficient_at(values, phase, n);
    }
    return out;
}

std::vector<CoefficientPair> fourier_coefficients_parallel(std::span<const double> values,
                                                           const TimeInterval& interval,
                                                           int order) {
    check_grid(values.size());
    const auto phase = make_phase(interval, values.size());
    std::vector<CoefficientPair> out(order > 0 ? order : 0);
#pragma omp parallel for schedule(static)
    for (int n = 1; n <= order; ++n) {
        out[n - 1] = coefficient_at(values, phase, n);
    }
    return out;
}

void evaluate_trig_serial(const TrigPoly& poly, const TimeInterval& interval,
                          std::span<double> out) {
    check_grid(out.size());
    const auto phase = make_phase(interval, out.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = value_at(poly, phase, static_cast<std::int64_t>(k));
    }
}

void evaluate_trig_parallel(const TrigPoly& poly, const TimeInterval& interval,
                            std::span<double> out) {
    check_grid(out.size());
    const auto phase = make_phase(interval, out.size());
    const auto count = static_cast<std::int64_t>(out.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < count; ++k) {
        out[k] = value_at(poly, phase, k);
    }
}

std::vector<CoefficientPair> fourier_coefficients(std::span<const double> values,
                                                  const TimeInterval& interval, int order) {
    const auto work = values.size() * static_cast<std::size_t>(order > 0 ? order : 0);
    return work >= kParallelThreshold ? fourier_coefficients_parallel(values, interval, order)
                                      : fourier_coefficients_serial(values, interval, order);
}

void evaluate_trig(const TrigPoly& poly, const TimeInterval& interval, std::span<double> out) {
    const auto work = out.size() * (poly.harmonics.size() + 1);
    if (work >= kParallelThreshold) {
        evaluate_trig_parallel(poly, interval, out);
    } else {
        evaluate_trig_serial(poly, interval, out);
    }
}

}  // namespace dynprice::kernels
