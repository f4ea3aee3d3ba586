#include "dynprice/curve.hpp"

#include "dynprice/error.hpp"
#include "dynprice/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numbers>

namespace dynprice {

namespace {

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) {
        throw Error(ErrorKind::InvalidArgument, fmt::format("{} must be finite, got {}", what, v));
    }
}

std::vector<double> grid_values(const LoadCurve& p, std::size_t count) {
    if (p.is_sampled()) {
        if (p.sample_count() != count) {
            throw Error(ErrorKind::GridMismatch,
                        fmt::format("sampled curves have {} and {} points", p.sample_count(),
                                    count));
        }
        return p.sampled_body().values;
    }
    std::vector<double> out(count);
    kernels::evaluate_trig(p.trig_body(), p.interval(), out);
    return out;
}

// Grid shared by a pair of curves when at least one is sampled.
std::size_t common_count(const LoadCurve& p, const LoadCurve& q) {
    if (p.is_sampled() && q.is_sampled() && p.sample_count() != q.sample_count()) {
        throw Error(ErrorKind::GridMismatch,
                    fmt::format("sampled curves have {} and {} points", p.sample_count(),
                                q.sample_count()));
    }
    return p.is_sampled() ? p.sample_count() : q.sample_count();
}

}  // namespace

LoadCurve LoadCurve::trig(const TimeInterval& interval, double mean,
                          std::vector<Harmonic> harmonics) {
    require_finite(mean, "mean");
    for (const auto& h : harmonics) {
        if (h.n < 1) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("harmonic index must be positive, got {}", h.n));
        }
        require_finite(h.cos_amp, "cosine amplitude");
        require_finite(h.sin_amp, "sine amplitude");
    }
    std::ranges::sort(harmonics, {}, &Harmonic::n);
    auto dup = std::ranges::adjacent_find(harmonics, {}, &Harmonic::n);
    if (dup != harmonics.end()) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("harmonic index {} appears twice", dup->n));
    }
    std::erase_if(harmonics, [](const Harmonic& h) { return h.cos_amp == 0.0 && h.sin_amp == 0.0; });
    return LoadCurve(interval, TrigPoly{mean, std::move(harmonics)});
}

LoadCurve LoadCurve::sampled(const TimeInterval& interval, std::vector<double> values) {
    if (values.size() < 2) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("sampled curve needs at least 2 samples, got {}", values.size()));
    }
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("sample {} is not finite ({})", k, values[k]));
        }
    }
    return LoadCurve(interval, Sampled{std::move(values)});
}

LoadCurve LoadCurve::constant(const TimeInterval& interval, double value) {
    return trig(interval, value);
}

const TrigPoly& LoadCurve::trig_body() const {
    if (const auto* t = std::get_if<TrigPoly>(&body_)) {
        return *t;
    }
    throw Error(ErrorKind::InvalidArgument, "curve is sampled, not a trigonometric polynomial");
}

const Sampled& LoadCurve::sampled_body() const {
    if (const auto* s = std::get_if<Sampled>(&body_)) {
        return *s;
    }
    throw Error(ErrorKind::InvalidArgument, "curve is a trigonometric polynomial, not sampled");
}

int LoadCurve::max_harmonic() const noexcept {
    const auto* t = std::get_if<TrigPoly>(&body_);
    return (t && !t->harmonics.empty()) ? t->harmonics.back().n : 0;
}

std::size_t LoadCurve::sample_count() const noexcept {
    const auto* s = std::get_if<Sampled>(&body_);
    return s ? s->values.size() : 0;
}

double LoadCurve::operator()(double t) const {
    if (const auto* poly = std::get_if<TrigPoly>(&body_)) {
        const double w = 2.0 * std::numbers::pi * interval_.fundamental() * t;
        double v = poly->mean;
        for (const auto& h : poly->harmonics) {
            v += h.cos_amp * std::cos(h.n * w) + h.sin_amp * std::sin(h.n * w);
        }
        return v;
    }
    if (t < interval_.t1() || t > interval_.t2()) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("t = {} lies outside [{}, {}]", t, interval_.t1(), interval_.t2()));
    }
    const auto& values = std::get<Sampled>(body_).values;
    const auto intervals = values.size() - 1;
    const double x = (t - interval_.t1()) / interval_.length() * static_cast<double>(intervals);
    const auto k = std::min(static_cast<std::size_t>(x), intervals - 1);
    const double frac = x - static_cast<double>(k);
    return values[k] + frac * (values[k + 1] - values[k]);
}

double grid_time(const TimeInterval& interval, std::size_t count, std::size_t k) {
    if (k + 1 == count) {
        return interval.t2();
    }
    return interval.t1() +
           interval.length() * static_cast<double>(k) / static_cast<double>(count - 1);
}

LoadCurve resample(const LoadCurve& p, std::size_t count) {
    if (count < 2) {
        throw Error(ErrorKind::InvalidArgument, "resampling needs at least 2 points");
    }
    if (p.is_sampled() && p.sample_count() == count) {
        return p;
    }
    return LoadCurve::sampled(p.interval(), grid_values(p, count));
}

LoadCurve add(const LoadCurve& p, const LoadCurve& q) {
    require_same_interval(p.interval(), q.interval());
    if (p.is_trig() && q.is_trig()) {
        const auto& a = p.trig_body();
        const auto& b = q.trig_body();
        std::vector<Harmonic> merged;
        merged.reserve(a.harmonics.size() + b.harmonics.size());
        auto i = a.harmonics.begin();
        auto j = b.harmonics.begin();
        while (i != a.harmonics.end() || j != b.harmonics.end()) {
            if (j == b.harmonics.end() || (i != a.harmonics.end() && i->n < j->n)) {
                merged.push_back(*i++);
            } else if (i == a.harmonics.end() || j->n < i->n) {
                merged.push_back(*j++);
            } else {
                merged.push_back({i->n, i->cos_amp + j->cos_amp, i->sin_amp + j->sin_amp});
                ++i;
                ++j;
            }
        }
        return LoadCurve::trig(p.interval(), a.mean + b.mean, std::move(merged));
    }
    const auto count = common_count(p, q);
    auto values = grid_values(p, count);
    const auto other = grid_values(q, count);
    for (std::size_t k = 0; k < count; ++k) {
        values[k] += other[k];
    }
    return LoadCurve::sampled(p.interval(), std::move(values));
}

LoadCurve scale(double a, const LoadCurve& p) {
    require_finite(a, "scalar");
    if (p.is_trig()) {
        const auto& poly = p.trig_body();
        std::vector<Harmonic> hs;
        hs.reserve(poly.harmonics.size());
        for (const auto& h : poly.harmonics) {
            hs.push_back({h.n, a * h.cos_amp, a * h.sin_amp});
        }
        return LoadCurve::trig(p.interval(), a * poly.mean, std::move(hs));
    }
    auto values = p.sampled_body().values;
    for (auto& v : values) {
        v *= a;
    }
    return LoadCurve::sampled(p.interval(), std::move(values));
}

double inner_product(const LoadCurve& p, const LoadCurve& q) {
    require_same_interval(p.interval(), q.interval());
    const double length = p.interval().length();
    if (p.is_trig() && q.is_trig()) {
        // Orthogonality of the trigonometric system over a whole period.
        const auto& a = p.trig_body();
        const auto& b = q.trig_body();
        double dynamic = 0.0;
        auto j = b.harmonics.begin();
        for (const auto& h : a.harmonics) {
            while (j != b.harmonics.end() && j->n < h.n) {
                ++j;
            }
            if (j != b.harmonics.end() && j->n == h.n) {
                dynamic += h.cos_amp * j->cos_amp + h.sin_amp * j->sin_amp;
            }
        }
        return length * a.mean * b.mean + 0.5 * length * dynamic;
    }
    const auto count = common_count(p, q);
    auto product = grid_values(p, count);
    const auto other = grid_values(q, count);
    for (std::size_t k = 0; k < count; ++k) {
        product[k] *= other[k];
    }
    return kernels::trapezoid(product, length / static_cast<double>(count - 1));
}

double norm(const LoadCurve& p) {
    return std::sqrt(std::max(0.0, inner_product(p, p)));
}

double distance(const LoadCurve& p, const LoadCurve& q) {
    return norm(p - q);
}

double integral(const LoadCurve& p) {
    if (p.is_trig()) {
        return p.interval().length() * p.trig_body().mean;
    }
    const auto& values = p.sampled_body().values;
    return kernels::trapezoid(values, p.interval().length() / static_cast<double>(values.size() - 1));
}

bool approx_equal(const LoadCurve& p, const LoadCurve& q) {
    return distance(p, q) < 1e-9 * std::max(1.0, norm(p));
}

}  // namespace dynprice
