#pragma once

// Worked-example curves, plans, and seeded random generators shared by the
// unit and acceptance suites.

#include "dynprice/curve.hpp"
#include "dynprice/settlement.hpp"
#include "dynprice/spectrum.hpp"
#include "dynprice/tariff.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>
#include <vector>

namespace dynprice::test {

inline const TimeInterval kUnit{0.0, 1.0};

// Worked-example load curves on [0, 1]; sin(10 pi t) is harmonic 5.
inline LoadCurve p1() { return LoadCurve::trig(kUnit, 50, {{5, 0, 20}, {20, 10, 0}, {100, 0, 5}}); }
inline LoadCurve p2() { return LoadCurve::trig(kUnit, 40, {{5, 0, 5}, {20, 10, 0}, {100, 0, 20}}); }
inline LoadCurve p3() { return LoadCurve::trig(kUnit, 30, {{20, 15, 9}}); }
inline LoadCurve p4() { return LoadCurve::trig(kUnit, 40, {{20, 15, 5}}); }
inline LoadCurve p5() { return LoadCurve::trig(kUnit, 50, {{20, -25, -15}}); }

inline PricePiece constant_piece(double lo, double hi, double c) {
    return {lo, hi, ConstantForm{c}};
}

inline PricePiece log_piece(double lo, double k, double s, double c) {
    return {lo, std::numeric_limits<double>::infinity(), LogShiftForm{k, s, c}};
}

// Plans of the one-source-one-subscriber example, with log shift 0.
inline PricePlan plan1() {
    PriceFunction f({constant_piece(0, 10, 20), log_piece(10, 3, 0, 20)});
    return PricePlan("plan1", f, f);
}

inline PricePlan plan2() {
    PriceFunction f({constant_piece(0, 10, 10), log_piece(10, 30, 0, 10)});
    return PricePlan("plan2", f, f);
}

inline PricePlan flat_plan(std::string name, double alpha, double beta) {
    return PricePlan(std::move(name), PriceFunction::constant(alpha), PriceFunction::constant(beta));
}

/// Energy price alpha0 below f0, zero for every harmonic.
inline PricePlan classical_plan(double alpha0, double f0 = 1.0) {
    PriceFunction f({constant_piece(0, f0, alpha0),
                     constant_piece(f0, std::numeric_limits<double>::infinity(), 0.0)});
    return PricePlan("classical", f, f);
}

struct Rng {
    explicit Rng(std::uint64_t seed) : engine(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine);
    }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine); }

    std::mt19937_64 engine;
};

/// Random trigonometric polynomial with up to `terms` harmonics in [1, max_n];
/// the highest harmonic is max_n when force_max is set.
inline LoadCurve random_trig(Rng& rng, const TimeInterval& interval, int max_n, int terms,
                             bool force_max = false, double mean_lo = -50, double mean_hi = 100) {
    std::set<int> ns;
    if (force_max) {
        ns.insert(max_n);
    }
    const int count = rng.integer(0, terms);
    for (int i = 0; i < count; ++i) {
        ns.insert(rng.integer(1, max_n));
    }
    std::vector<Harmonic> hs;
    for (int n : ns) {
        hs.push_back({n, rng.uniform(-20, 20), rng.uniform(-20, 20)});
    }
    return LoadCurve::trig(interval, rng.uniform(mean_lo, mean_hi), hs);
}

/// Random curve sampled on `count` points (white noise around a level).
inline LoadCurve random_sampled(Rng& rng, const TimeInterval& interval, std::size_t count) {
    std::vector<double> v(count);
    const double level = rng.uniform(-10, 60);
    for (auto& x : v) {
        x = level + rng.uniform(-15, 15);
    }
    return LoadCurve::sampled(interval, v);
}

/// Analytic value of a TrigPoly at t, written independently of the library.
inline double evaluate_analytic(const TrigPoly& poly, const TimeInterval& interval, double t) {
    double v = poly.mean;
    for (const auto& h : poly.harmonics) {
        const double w = 2.0 * std::numbers::pi * h.n * t / interval.length();
        v += h.cos_amp * std::cos(w) + h.sin_amp * std::sin(w);
    }
    return v;
}

/// Samples a TrigPoly on the closed uniform grid with plain point evaluation.
inline LoadCurve sample_analytic(const LoadCurve& p, std::size_t count) {
    std::vector<double> v(count);
    const auto& iv = p.interval();
    for (std::size_t k = 0; k < count; ++k) {
        const double t = iv.t1() + iv.length() * static_cast<double>(k) / static_cast<double>(count - 1);
        v[k] = evaluate_analytic(p.trig_body(), iv, t);
    }
    return LoadCurve::sampled(iv, v);
}

inline double sum_totals(const std::vector<BillBreakdown>& bills) {
    double s = 0.0;
    for (const auto& b : bills) {
        s += b.total;
    }
    return s;
}

}  // namespace dynprice::test
