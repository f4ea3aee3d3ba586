#include "dynprice/settlement.hpp"

#include "dynprice/error.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <map>
#include <set>
#include <unordered_set>

namespace dynprice {

const char* to_string(LineKind kind) noexcept {
    switch (kind) {
        case LineKind::Energy: return "a0";
        case LineKind::Cosine: return "a";
        case LineKind::Sine: return "b";
    }
    return "?";
}

namespace {

LoadCurve total_curve(const TimeInterval& interval, const std::vector<LoadCurve>& curves) {
    auto acc = LoadCurve::zero(interval);
    for (const auto& c : curves) {
        acc = acc + c;
    }
    return acc;
}

void require_matching(const LoadCurve& expected, const LoadCurve& actual, const std::string& what) {
    const double gap = distance(expected, actual);
    const double tol = kBusBalanceTolerance * norm(expected);
    if (gap > tol) {
        throw Error(ErrorKind::BusImbalance,
                    fmt::format("{}: L2 distance {} exceeds tolerance {}", what, gap, tol));
    }
}

std::vector<int> harmonic_union(const std::vector<FourierSpectrum>& spectra) {
    std::set<int> ns;
    for (const auto& s : spectra) {
        for (const auto& line : s.lines()) {
            ns.insert(line.n);
        }
    }
    return {ns.begin(), ns.end()};
}

std::vector<FourierSpectrum> decompose_all(const std::vector<LoadCurve>& curves, int order) {
    return detail::parallel_map(curves.size(),
                                [&](std::size_t i) { return decompose(curves[i], order); });
}

BillBreakdown merge(std::string id, const std::vector<BillBreakdown>& parts) {
    BillBreakdown out{std::move(id), {}, 0.0, 0.0, 0.0};
    for (const auto& p : parts) {
        out.lines.insert(out.lines.end(), p.lines.begin(), p.lines.end());
        out.non_dynamic_total += p.non_dynamic_total;
        out.dynamic_total += p.dynamic_total;
    }
    out.total = out.non_dynamic_total + out.dynamic_total;
    return out;
}

}  // namespace

BillBreakdown bill_spectrum(std::string id, const FourierSpectrum& spectrum,
                            const PriceSchedule& prices) {
    const double length = spectrum.interval().length();
    BillBreakdown bill{std::move(id), {}, 0.0, 0.0, 0.0};
    bill.lines.reserve(1 + 2 * spectrum.lines().size());

    const double energy_charge = prices.alpha0 * 0.5 * length * spectrum.a0();
    bill.lines.push_back({0, LineKind::Energy, spectrum.a0(), prices.alpha0, energy_charge});
    bill.non_dynamic_total = energy_charge;

    for (const auto& line : spectrum.lines()) {
        const auto* price = prices.find(line.n);
        if (!price) {
            throw Error(ErrorKind::PlanCoverage,
                        fmt::format("no price for harmonic {} in bill '{}'", line.n, bill.id));
        }
        if (line.a != 0.0) {
            const double charge = length * price->alpha * line.a;
            bill.lines.push_back({line.n, LineKind::Cosine, line.a, price->alpha, charge});
            bill.dynamic_total += charge;
        }
        if (line.b != 0.0) {
            const double charge = length * price->beta * line.b;
            bill.lines.push_back({line.n, LineKind::Sine, line.b, price->beta, charge});
            bill.dynamic_total += charge;
        }
    }
    bill.total = bill.non_dynamic_total + bill.dynamic_total;
    return bill;
}

void Scenario::validate() const {
    if (order < 1) {
        throw Error(ErrorKind::InvalidArgument,
                    fmt::format("truncation order must be positive, got {}", order));
    }
    std::unordered_set<std::string> source_ids;
    std::vector<LoadCurve> generation;
    for (const auto& s : sources) {
        if (s.id.empty() || !source_ids.insert(s.id).second) {
            throw Error(ErrorKind::InvalidArgument, fmt::format("duplicate or empty source id '{}'", s.id));
        }
        require_same_interval(interval, s.generation.interval());
        generation.push_back(s.generation);
    }
    std::unordered_set<std::string> subscriber_ids;
    std::vector<LoadCurve> loads;
    for (const auto& s : subscribers) {
        if (s.id.empty() || !subscriber_ids.insert(s.id).second) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("duplicate or empty subscriber id '{}'", s.id));
        }
        require_same_interval(interval, s.load.interval());
        loads.push_back(s.load);
    }
    require_matching(total_curve(interval, loads), total_curve(interval, generation),
                     "bus balance (total generation vs total load)");

    if (allocation.empty()) {
        return;
    }
    std::map<std::string, std::vector<LoadCurve>> by_subscriber;
    std::map<std::string, std::vector<LoadCurve>> by_source;
    std::set<std::pair<std::string, std::string>> pairs;
    for (const auto& a : allocation) {
        if (!subscriber_ids.contains(a.subscriber) || !source_ids.contains(a.source)) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("allocation ({}, {}) names an unknown party", a.subscriber,
                                    a.source));
        }
        if (!pairs.emplace(a.subscriber, a.source).second) {
            throw Error(ErrorKind::InvalidArgument,
                        fmt::format("allocation ({}, {}) given twice", a.subscriber, a.source));
        }
        require_same_interval(interval, a.partial.interval());
        by_subscriber[a.subscriber].push_back(a.partial);
        by_source[a.source].push_back(a.partial);
    }
    for (const auto& s : subscribers) {
        require_matching(s.load, total_curve(interval, by_subscriber[s.id]),
                         fmt::format("allocated partials of subscriber '{}'", s.id));
    }
    for (const auto& s : sources) {
        require_matching(s.generation, total_curve(interval, by_source[s.id]),
                         fmt::format("allocated partials of source '{}'", s.id));
    }
}

BillBreakdown settle_one_one(const LoadCurve& load, const PricePlan& plan, int order,
                             std::string id) {
    const auto spectrum = decompose(load, order);
    const auto prices = resolve_prices(plan, spectrum);
    return bill_spectrum(std::move(id), spectrum, prices.schedule);
}

OneSourceMultiResult settle_one_source_multi(std::span<const Subscriber> loads,
                                             const PricePlan& plan, int order,
                                             std::string source_id) {
    if (loads.empty()) {
        throw Error(ErrorKind::InvalidArgument, "one-source settlement needs at least one subscriber");
    }
    std::vector<LoadCurve> curves;
    for (const auto& s : loads) {
        curves.push_back(s.load);
    }
    const auto spectra = decompose_all(curves, order);
    const auto aggregate = sum(spectra);
    const auto extra = harmonic_union(spectra);

    OneSourceMultiResult out{{}, {}, resolve_prices(plan, aggregate, extra)};
    out.bills = detail::parallel_map(loads.size(), [&](std::size_t j) {
        return bill_spectrum(loads[j].id, spectra[j], out.prices.schedule);
    });
    out.source_income = bill_spectrum(std::move(source_id), aggregate, out.prices.schedule);
    return out;
}

MultiSourceOneResult settle_multi_source_one(const LoadCurve& load,
                                             std::span<const Source> partials, int order) {
    std::vector<LoadCurve> curves;
    for (const auto& p : partials) {
        curves.push_back(p.generation);
    }
    require_matching(load, total_curve(load.interval(), curves),
                     "partial curves vs subscriber load");

    MultiSourceOneResult out;
    out.per_source = detail::parallel_map(partials.size(), [&](std::size_t i) {
        const auto spectrum = decompose(partials[i].generation, order);
        const auto prices = resolve_prices(partials[i].plan, spectrum);
        return bill_spectrum(partials[i].id, spectrum, prices.schedule);
    });
    for (const auto& bill : out.per_source) {
        out.total += bill.total;
    }
    return out;
}

MultiMultiResult settle_multi_multi(const Scenario& scenario) {
    scenario.validate();

    std::vector<LoadCurve> loads;
    for (const auto& s : scenario.subscribers) {
        loads.push_back(s.load);
    }
    std::vector<LoadCurve> generation;
    for (const auto& s : scenario.sources) {
        generation.push_back(s.generation);
    }
    const auto demand = decompose_all(loads, scenario.order);
    const auto supply = decompose_all(generation, scenario.order);

    std::vector<PricedSource> priced;
    for (std::size_t i = 0; i < supply.size(); ++i) {
        priced.push_back({resolve_prices(scenario.sources[i].plan, supply[i]), supply[i]});
    }

    MultiMultiResult out;
    out.equivalent = equivalent_prices(priced, demand);
    out.bills = detail::parallel_map(demand.size(), [&](std::size_t j) {
        return bill_spectrum(scenario.subscribers[j].id, demand[j], out.equivalent.schedule);
    });
    for (std::size_t i = 0; i < priced.size(); ++i) {
        out.incomes.push_back(
            bill_spectrum(scenario.sources[i].id, priced[i].spectrum, priced[i].prices.schedule));
    }
    out.audit = audit_conservation(scenario, out.bills, out.incomes, out.equivalent.unallocated);
    return out;
}

AllocatedResult settle_allocated(const Scenario& scenario) {
    if (scenario.allocation.empty()) {
        throw Error(ErrorKind::InvalidArgument, "allocated settlement needs an allocation");
    }
    scenario.validate();

    const auto n_sources = scenario.sources.size();
    std::vector<std::vector<FourierSpectrum>> partial_spectra(n_sources);
    std::vector<std::vector<const Allocation*>> partial_of(n_sources);
    std::map<std::string, std::size_t> source_index;
    for (std::size_t i = 0; i < n_sources; ++i) {
        source_index[scenario.sources[i].id] = i;
    }
    for (const auto& a : scenario.allocation) {
        const auto i = source_index.at(a.source);
        partial_spectra[i].push_back(decompose(a.partial, scenario.order));
        partial_of[i].push_back(&a);
    }

    AllocatedResult out;
    std::vector<SignedPrices> prices;
    for (std::size_t i = 0; i < n_sources; ++i) {
        const auto& src = scenario.sources[i];
        const auto supply = decompose(src.generation, scenario.order);
        const auto extra = harmonic_union(partial_spectra[i]);
        prices.push_back(resolve_prices(src.plan, supply, extra));
        out.incomes.push_back(bill_spectrum(src.id, supply, prices.back().schedule));
    }

    for (const auto& sub : scenario.subscribers) {
        std::vector<BillBreakdown> parts;
        for (std::size_t i = 0; i < n_sources; ++i) {
            for (std::size_t k = 0; k < partial_of[i].size(); ++k) {
                if (partial_of[i][k]->subscriber == sub.id) {
                    parts.push_back(bill_spectrum(sub.id + "@" + scenario.sources[i].id,
                                                  partial_spectra[i][k], prices[i].schedule));
                }
            }
        }
        out.pair_bills.insert(out.pair_bills.end(), parts.begin(), parts.end());
        out.bills.push_back(merge(sub.id, parts));
    }
    out.audit = audit_conservation(scenario, out.bills, out.incomes);
    return out;
}

AuditReport audit_conservation(const Scenario& scenario, std::span<const BillBreakdown> bills,
                               std::span<const BillBreakdown> incomes,
                               std::span<const UnallocatedAmount> unallocated) {
    AuditReport report;
    double charge_scale = 0.0;
    std::map<int, FrequencyFlow> flows;
    auto flow = [&](int n) -> FrequencyFlow& {
        return flows.try_emplace(n, FrequencyFlow{n, 0.0, 0.0, 0.0}).first->second;
    };

    for (const auto& b : bills) {
        report.bills_total += b.total;
        if (b.total < 0.0) {
            report.negative_totals.push_back(b.id);
        }
        for (const auto& line : b.lines) {
            charge_scale += std::abs(line.charge);
            flow(line.n).billed += line.charge;
        }
    }
    for (const auto& b : incomes) {
        report.incomes_total += b.total;
        if (b.total < 0.0) {
            report.negative_totals.push_back(b.id);
        }
        for (const auto& line : b.lines) {
            flow(line.n).earned += line.charge;
        }
    }
    for (const auto& u : unallocated) {
        report.unallocated_total += u.amount;
        flow(u.n).unallocated += u.amount;
    }
    report.money_residual = report.bills_total - report.incomes_total - report.unallocated_total;
    report.money_tolerance = 1e-6 * charge_scale;
    report.money_ok = std::abs(report.money_residual) <= report.money_tolerance;

    for (const auto& s : scenario.subscribers) {
        report.load_energy += integral(s.load);
    }
    for (const auto& s : scenario.sources) {
        report.generation_energy += integral(s.generation);
    }
    report.energy_tolerance = kBusBalanceTolerance * std::abs(report.load_energy);
    report.energy_ok =
        std::abs(report.load_energy - report.generation_energy) <= report.energy_tolerance;

    for (const auto& [n, f] : flows) {
        report.flows.push_back(f);
    }
    return report;
}

}  // namespace dynprice
