#include "dynprice/spectrum.hpp"

#include "dynprice/error.hpp"
#include "dynprice/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>

namespace dynprice {

FourierSpectrum::FourierSpectrum(const TimeInterval& interval, double a0,
                                 std::vector<SpectralLine> lines, int order)
    : interval_(interval), a0_(a0), lines_(std::move(lines)), order_(order) {
    if (order_ < 1) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("truncation order must be positive, got {}", order_));
    }
    if (!std::isfinite(a0_)) {
        throw Error(ErrorKind::InvalidArgument, "a0 must be finite");
    }
    std::ranges::sort(lines_, {}, &SpectralLine::n);
    for (std::size_t i = 0; i < lines_.size(); ++i) {
        const auto& line = lines_[i];
        if (line.n < 1 || line.n > order_) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("harmonic {} outside [1, {}]", line.n, order_));
        }
        if (i > 0 && lines_[i - 1].n == line.n) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("harmonic {} appears twice", line.n));
        }
        if (!std::isfinite(line.a) || !std::isfinite(line.b)) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("coefficients of harmonic {} are not finite", line.n));
        }
    }
}

const SpectralLine* FourierSpectrum::find(int n) const noexcept {
    auto it = std::ranges::lower_bound(lines_, n, {}, &SpectralLine::n);
    return (it != lines_.end() && it->n == n) ? &*it : nullptr;
}

double pruning_threshold(double a0) noexcept {
    return 1e-9 * std::max(1.0, std::abs(a0));
}

FourierSpectrum prune(const FourierSpectrum& s) {
    const double threshold = pruning_threshold(s.a0());
    std::vector<SpectralLine> kept;
    kept.reserve(s.lines().size());
    for (auto line : s.lines()) {
        if (std::abs(line.a) < threshold) {
            line.a = 0.0;
        }
        if (std::abs(line.b) < threshold) {
            line.b = 0.0;
        }
        if (line.a != 0.0 || line.b != 0.0) {
            kept.push_back(line);
        }
    }
    return FourierSpectrum(s.interval(), s.a0(), std::move(kept), s.order());
}

FourierSpectrum decompose(const LoadCurve& p, int order) {
    if (order < 1) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("truncation order must be positive, got {}", order));
    }
    const auto& interval = p.interval();
    if (p.is_trig()) {
        const auto& poly = p.trig_body();
        std::vector<SpectralLine> lines;
        for (const auto& h : poly.harmonics) {
            if (h.n <= order) {
                lines.push_back({h.n, h.cos_amp, h.sin_amp});
            }
        }
        return prune(FourierSpectrum(interval, 2.0 * poly.mean, std::move(lines), order));
    }

    const auto count = p.sample_count();
    const auto limit = (count - 1) / 2;
    if (static_cast<std::size_t>(order) > limit) {
        throw Error(ErrorKind::Aliasing,
                    fmt::format("order {} exceeds the aliasing bound (samples - 1) / 2 = {} "
                                "for {} samples",
                                order, limit, count));
    }
    const auto& values = p.sampled_body().values;
    const double a0 = 2.0 / interval.length() * integral(p);
    const auto coefficients = kernels::fourier_coefficients(values, interval, order);
    std::vector<SpectralLine> lines;
    lines.reserve(coefficients.size());
    for (int n = 1; n <= order; ++n) {
        lines.push_back({n, coefficients[n - 1].a, coefficients[n - 1].b});
    }
    return prune(FourierSpectrum(interval, a0, std::move(lines), order));
}

LoadCurve reconstruct(const FourierSpectrum& s) {
    std::vector<Harmonic> harmonics;
    harmonics.reserve(s.lines().size());
    for (const auto& line : s.lines()) {
        harmonics.push_back({line.n, line.a, line.b});
    }
    return LoadCurve::trig(s.interval(), 0.5 * s.a0(), std::move(harmonics));
}

double energy(const FourierSpectrum& s) {
    return 0.5 * s.interval().length() * s.a0();
}

FourierSpectrum sum(const std::vector<FourierSpectrum>& spectra) {
    if (spectra.empty()) {
        throw Error(ErrorKind::InvalidArgument, "cannot sum an empty list of spectra");
    }
    const auto& interval = spectra.front().interval();
    double a0 = 0.0;
    int order = 1;
    std::map<int, SpectralLine> acc;
    for (const auto& s : spectra) {
        require_same_interval(interval, s.interval());
        a0 += s.a0();
        order = std::max(order, s.order());
        for (const auto& line : s.lines()) {
            auto& slot = acc.try_emplace(line.n, SpectralLine{line.n, 0.0, 0.0}).first->second;
            slot.a += line.a;
            slot.b += line.b;
        }
    }
    std::vector<SpectralLine> lines;
    lines.reserve(acc.size());
    for (const auto& [n, line] : acc) {
        lines.push_back(line);
    }
    return prune(FourierSpectrum(interval, a0, std::move(lines), order));
}

double parseval_residual(const LoadCurve& p, const FourierSpectrum& s) {
    require_same_interval(p.interval(), s.interval());
    const double length = s.interval().length();
    const double norm_sq = inner_product(p, p);
    double dynamic = 0.0;
    for (const auto& line : s.lines()) {
        dynamic += line.a * line.a + line.b * line.b;
    }
    const double half_a0 = 0.5 * s.a0();
    const double coefficient_sq = half_a0 * half_a0 * length + 0.5 * length * dynamic;
    const double residual = norm_sq - coefficient_sq;
    return norm_sq > 0.0 ? residual / norm_sq : residual;
}

LoadCurve normalized_basis(const TimeInterval& interval, int index) {
    if (index < 0) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("basis index must be non-negative, got {}", index));
    }
    const double length = interval.length();
    if (index == 0) {
        return LoadCurve::constant(interval, 1.0 / std::sqrt(length));
    }
    const double amp = std::sqrt(2.0 / length);
    const int n = (index + 1) / 2;
    const bool cosine = index % 2 == 1;
    return LoadCurve::trig(interval, 0.0, {{n, cosine ? amp : 0.0, cosine ? 0.0 : amp}});
}

}  // namespace dynprice
