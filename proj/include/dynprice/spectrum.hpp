#pragma once

#include "dynprice/curve.hpp"
#include "dynprice/interval.hpp"

#include <vector>

namespace dynprice {

/// Default truncation order of the Fourier series.
inline constexpr int kDefaultOrder = 128;

/// Fourier coefficients (a_n, b_n) of harmonic n.
struct SpectralLine {
    int n = 0;
    double a = 0.0;
    double b = 0.0;

    friend bool operator==(const SpectralLine&, const SpectralLine&) = default;
};

/// Truncated Fourier series of a curve:
///   p(t) = a0/2 + sum_{n=1..order} [a_n cos(2 pi n f0 t) + b_n sin(2 pi n f0 t)].
///
/// a0 carries the accumulated energy, (T0/2) a0; the harmonic lines carry the
/// dynamism. Lines are sorted by n, distinct, and lie in [1, order].
class FourierSpectrum {
public:
    FourierSpectrum(const TimeInterval& interval, double a0, std::vector<SpectralLine> lines,
                    int order);

    const TimeInterval& interval() const noexcept { return interval_; }
    double a0() const noexcept { return a0_; }
    const std::vector<SpectralLine>& lines() const noexcept { return lines_; }
    int order() const noexcept { return order_; }

    /// nullptr when harmonic n is absent (its coefficients are zero).
    const SpectralLine* find(int n) const noexcept;

    friend bool operator==(const FourierSpectrum&, const FourierSpectrum&) = default;

private:
    TimeInterval interval_;
    double a0_;
    std::vector<SpectralLine> lines_;
    int order_;
};

/// Coefficient magnitude below which a component counts as quadrature dust:
/// 1e-9 * max(1, |a0|).
double pruning_threshold(double a0) noexcept;

/// Zeroes dust components and drops harmonics whose two coefficients are both zero.
FourierSpectrum prune(const FourierSpectrum& s);

/// TrigPoly curves are read off exactly (harmonics above `order` are dropped).
/// Sampled curves use trapezoid quadrature and require
/// order <= (sample_count - 1) / 2; larger orders raise ErrorKind::Aliasing.
FourierSpectrum decompose(const LoadCurve& p, int order = kDefaultOrder);

/// TrigPoly with mean a0/2 and the listed harmonics.
LoadCurve reconstruct(const FourierSpectrum& s);

/// (T0/2) a0.
double energy(const FourierSpectrum& s);

/// Coefficient-wise sum of spectra on a common interval, then pruned.
FourierSpectrum sum(const std::vector<FourierSpectrum>& spectra);

/// (||p||^2 - [(a0/2)^2 T0 + (T0/2) sum (a_n^2 + b_n^2)]) / ||p||^2.
/// Returns the absolute residual when ||p|| = 0.
double parseval_residual(const LoadCurve& p, const FourierSpectrum& s);

/// Orthonormal Fourier basis: index 0 is 1/sqrt(T0), index 2n-1 is
/// sqrt(2/T0) cos(2 pi n f0 t), index 2n is sqrt(2/T0) sin(2 pi n f0 t).
LoadCurve normalized_basis(const TimeInterval& interval, int index);

}  // namespace dynprice
