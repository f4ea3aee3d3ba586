#include "dynprice/tariff.hpp"

#include "dynprice/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <set>

namespace dynprice {

double PricePiece::evaluate(double f) const {
    if (const auto* c = std::get_if<ConstantForm>(&form)) {
        return c->c;
    }
    const auto& log = std::get<LogShiftForm>(form);
    return log.k * std::log10(f - log.s) + log.c;
}

PriceFunction::PriceFunction(std::vector<PricePiece> pieces) : pieces_(std::move(pieces)) {
    if (pieces_.empty()) {
        throw Error(ErrorKind::PlanCoverage, "price function has no pieces");
    }
    if (pieces_.front().f_lo != 0.0) {
        throw Error(ErrorKind::PlanCoverage,
                    fmt::format("first piece starts at {} instead of 0", pieces_.front().f_lo));
    }
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& piece = pieces_[i];
        if (!(piece.f_lo < piece.f_hi) || std::isnan(piece.f_hi)) {
            throw Error(ErrorKind::PlanCoverage,
                        fmt::format("piece {} has empty range [{}, {})", i, piece.f_lo, piece.f_hi));
        }
        if (i + 1 < pieces_.size() && piece.f_hi != pieces_[i + 1].f_lo) {
            throw Error(ErrorKind::PlanCoverage,
                        fmt::format("pieces {} and {} leave a gap or overlap at f = {}", i, i + 1,
                                    piece.f_hi));
        }
        if (const auto* c = std::get_if<ConstantForm>(&piece.form)) {
            if (!std::isfinite(c->c)) {
                throw Error(ErrorKind::InvalidArgument,
                            fmt::format("piece {} has a non-finite constant", i));
            }
        } else {
            const auto& log = std::get<LogShiftForm>(piece.form);
            if (!std::isfinite(log.k) || !std::isfinite(log.s) || !std::isfinite(log.c)) {
                throw Error(ErrorKind::InvalidArgument,
                            fmt::format("piece {} has non-finite parameters", i));
            }
            if (!(piece.f_lo > log.s)) {
                throw Error(ErrorKind::InvalidArgument,
                            fmt::format("log piece {} needs f_lo > s, got f_lo = {}, s = {}", i,
                                        piece.f_lo, log.s));
            }
        }
    }
    if (!std::isinf(pieces_.back().f_hi)) {
        throw Error(ErrorKind::PlanCoverage,
                    fmt::format("pieces stop at f = {} instead of covering [0, inf)",
                                pieces_.back().f_hi));
    }
}

PriceFunction PriceFunction::constant(double c) {
    return PriceFunction({PricePiece{0.0, std::numeric_limits<double>::infinity(), ConstantForm{c}}});
}

double PriceFunction::operator()(double f) const {
    if (!(f >= 0.0) || std::isinf(f)) {
        throw Error(ErrorKind::PlanCoverage, fmt::format("no price piece covers f = {}", f));
    }
    auto it = std::ranges::upper_bound(pieces_, f, {}, &PricePiece::f_lo);
    const auto& piece = *std::prev(it);
    const double value = piece.evaluate(f);
    if (!(value >= 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("price magnitude at f = {} is {}, expected >= 0", f, value));
    }
    return value;
}

PricePlan::PricePlan(std::string name, PriceFunction alpha, PriceFunction beta)
    : name_(std::move(name)), alpha_(std::move(alpha)), beta_(std::move(beta)) {
    if (!(alpha_(0.0) > 0.0)) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("plan '{}' needs a positive energy price, got {}", name_,
                                alpha_(0.0)));
    }
}

const HarmonicPrice* PriceSchedule::find(int n) const noexcept {
    auto it = std::ranges::lower_bound(harmonics, n, {}, &HarmonicPrice::n);
    return (it != harmonics.end() && it->n == n) ? &*it : nullptr;
}

SignedPrices resolve_prices(const PricePlan& plan, const FourierSpectrum& supply,
                            std::span<const int> extra) {
    const double f0 = supply.interval().fundamental();
    std::set<int> wanted;
    for (const auto& line : supply.lines()) {
        wanted.insert(line.n);
    }
    for (int n : extra) {
        if (n < 1) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("harmonic index must be positive, got {}", n));
        }
        wanted.insert(n);
    }

    SignedPrices out{plan.name(), {plan.alpha()(0.0), {}}};
    out.schedule.harmonics.reserve(wanted.size());
    for (int n : wanted) {
        const auto* line = supply.find(n);
        const double a = line ? line->a : 0.0;
        const double b = line ? line->b : 0.0;
        const double f = n * f0;
        out.schedule.harmonics.push_back(
            {n, std::copysign(plan.alpha()(f), a < 0.0 ? -1.0 : 1.0),
             std::copysign(plan.beta()(f), b < 0.0 ? -1.0 : 1.0)});
    }
    return out;
}

namespace {

struct Component {
    double supply = 0.0;     // sum_i coefficient_i
    double demand = 0.0;     // sum_j coefficient_j
    double priced = 0.0;     // sum_i price_i coefficient_i
};

struct BusTotals {
    TimeInterval interval{0.0, 1.0};
    double scale = 1.0;
    Component energy;
    std::map<int, std::pair<Component, Component>> harmonics;  // cosine, sine
};

double price_of(const PriceSchedule& schedule, int n, bool cosine, const std::string& plan) {
    const auto* p = schedule.find(n);
    if (!p) {
        throw Error(ErrorKind::PlanCoverage,
                    fmt::format("prices of '{}' do not cover harmonic {}", plan, n));
    }
    return cosine ? p->alpha : p->beta;
}

BusTotals bus_totals(std::span<const PricedSource> sources,
                     std::span<const FourierSpectrum> demand) {
    if (demand.empty()) {
        throw Error(ErrorKind::ZeroEnergy, "bus has no demand");
    }
    BusTotals bus;
    bus.interval = demand.front().interval();
    double largest = 0.0;
    for (const auto& src : sources) {
        const auto& s = src.spectrum;
        require_same_interval(bus.interval, s.interval());
        bus.energy.supply += s.a0();
        bus.energy.priced += src.prices.schedule.alpha0 * s.a0();
        largest = std::max(largest, std::abs(s.a0()));
        for (const auto& line : s.lines()) {
            auto& [c, si] = bus.harmonics[line.n];
            c.supply += line.a;
            si.supply += line.b;
            if (line.a != 0.0) {
                c.priced += price_of(src.prices.schedule, line.n, true, src.prices.plan_name) * line.a;
            }
            if (line.b != 0.0) {
                si.priced += price_of(src.prices.schedule, line.n, false, src.prices.plan_name) * line.b;
            }
            largest = std::max({largest, std::abs(line.a), std::abs(line.b)});
        }
    }
    for (const auto& s : demand) {
        require_same_interval(bus.interval, s.interval());
        bus.energy.demand += s.a0();
        largest = std::max(largest, std::abs(s.a0()));
        for (const auto& line : s.lines()) {
            auto& [c, si] = bus.harmonics[line.n];
            c.demand += line.a;
            si.demand += line.b;
            largest = std::max({largest, std::abs(line.a), std::abs(line.b)});
        }
    }
    bus.scale = std::max(1.0, largest);
    return bus;
}

void check_balance(const BusTotals& bus) {
    const double tol = kBusBalanceTolerance * bus.scale;
    auto check = [&](const Component& c, int n, const char* name) {
        if (std::abs(c.supply - c.demand) > tol) {
            throw Error(ErrorKind::BusImbalance,
                        fmt::format("bus imbalance at {}{}: supply {} vs demand {} (tolerance {})",
                                    name, n, c.supply, c.demand, tol));
        }
    };
    check(bus.energy, 0, "a");
    for (const auto& [n, pair] : bus.harmonics) {
        check(pair.first, n, "a");
        check(pair.second, n, "b");
    }
}

bool degenerate(const Component& c, double scale) {
    return std::abs(c.demand) < kDegenerateTolerance * scale;
}

double relative_gap(double lhs, double rhs) {
    const double size = std::max(std::abs(lhs), std::abs(rhs));
    return size > 0.0 ? std::abs(lhs - rhs) / size : 0.0;
}

}  // namespace

EquivalentPrices equivalent_prices(std::span<const PricedSource> sources,
                                   std::span<const FourierSpectrum> demand) {
    const auto bus = bus_totals(sources, demand);
    check_balance(bus);
    if (degenerate(bus.energy, bus.scale)) {
        throw Error(ErrorKind::ZeroEnergy,
                    fmt::format("bus energy coefficient sum a0 = {} is zero", bus.energy.demand));
    }

    EquivalentPrices out;
    out.schedule.alpha0 = bus.energy.priced / bus.energy.demand;
    const double length = bus.interval.length();
    for (const auto& [n, pair] : bus.harmonics) {
        const auto& [c, s] = pair;
        HarmonicPrice price{n, 0.0, 0.0};
        double residual = 0.0;
        if (degenerate(c, bus.scale)) {
            residual += c.priced;
        } else {
            price.alpha = c.priced / c.demand;
        }
        if (degenerate(s, bus.scale)) {
            residual += s.priced;
        } else {
            price.beta = s.priced / s.demand;
        }
        out.schedule.harmonics.push_back(price);
        if (residual != 0.0) {
            out.unallocated.push_back({n, -length * residual});
        }
    }
    return out;
}

double equivalence_defect(std::span<const PricedSource> sources,
                          std::span<const FourierSpectrum> demand,
                          const EquivalentPrices& equivalent) {
    const auto bus = bus_totals(sources, demand);
    double worst = relative_gap(bus.energy.priced, equivalent.schedule.alpha0 * bus.energy.demand);
    for (const auto& [n, pair] : bus.harmonics) {
        const auto* price = equivalent.schedule.find(n);
        const double alpha = price ? price->alpha : 0.0;
        const double beta = price ? price->beta : 0.0;
        if (!degenerate(pair.first, bus.scale)) {
            worst = std::max(worst, relative_gap(pair.first.priced, alpha * pair.first.demand));
        }
        if (!degenerate(pair.second, bus.scale)) {
            worst = std::max(worst, relative_gap(pair.second.priced, beta * pair.second.demand));
        }
    }
    return worst;
}

}  // namespace dynprice
