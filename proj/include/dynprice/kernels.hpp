#pragma once

// Sampling and quadrature kernels over the closed uniform grid.
//
// Every kernel has a serial reference version and an OpenMP version. The
// OpenMP versions split work across independent outputs (one harmonic or one
// grid point per iteration) and keep each inner sum in serial order, so both
// versions return bit-identical results.

#include "dynprice/curve.hpp"
#include "dynprice/interval.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace dynprice::kernels {

struct CoefficientPair {
    double a = 0.0;
    double b = 0.0;
};

/// Composite trapezoid rule with uniform step.
double trapezoid(std::span<const double> values, double step);

/// Trapezoid quadrature of (2/T0) int p cos(2 pi n f0 t) dt and the sine
/// counterpart for n = 1..order. Element n-1 holds harmonic n.
std::vector<CoefficientPair> fourier_coefficients_serial(std::span<const double> values,
                                                         const TimeInterval& interval,
                                                         int order);
std::vector<CoefficientPair> fourier_coefficients_parallel(std::span<const double> values,
                                                           const TimeInterval& interval,
                                                           int order);

/// Writes the trigonometric polynomial at the out.size() closed-grid points.
void evaluate_trig_serial(const TrigPoly& poly, const TimeInterval& interval,
                          std::span<double> out);
void evaluate_trig_parallel(const TrigPoly& poly, const TimeInterval& interval,
                            std::span<double> out);

/// Dispatchers: pick the OpenMP path once the work is large enough.
std::vector<CoefficientPair> fourier_coefficients(std::span<const double> values,
                                                  const TimeInterval& interval, int order);
void evaluate_trig(const TrigPoly& poly, const TimeInterval& interval, std::span<double> out);

/// Work (samples x harmonics) above which the dispatchers go parallel.
inline constexpr std::size_t kParallelThreshold = 1u << 15;

}  // namespace dynprice::kernels
