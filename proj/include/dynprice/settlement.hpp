#pragma once

#include "dynprice/curve.hpp"
#include "dynprice/spectrum.hpp"
#include "dynprice/tariff.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dynprice {

enum class LineKind { Energy, Cosine, Sine };

/// "a0", "a" or "b".
const char* to_string(LineKind kind) noexcept;

/// One priced coefficient. charge = price (T0/2) a0 for the energy line and
/// T0 price coefficient for harmonic lines.
struct BillLine {
    int n = 0;
    LineKind kind = LineKind::Energy;
    double coefficient = 0.0;
    double price = 0.0;
    double charge = 0.0;
};

/// Per-line payment breakdown of one party (a subscriber's bill or a source's
/// income). total == non_dynamic_total + dynamic_total.
struct BillBreakdown {
    std::string id;
    std::vector<BillLine> lines;
    double non_dynamic_total = 0.0;
    double dynamic_total = 0.0;
    double total = 0.0;
};

/// Prices every nonzero coefficient of `spectrum` with `prices`. The energy
/// line is always present. Throws ErrorKind::PlanCoverage when a harmonic has
/// no price.
BillBreakdown bill_spectrum(std::string id, const FourierSpectrum& spectrum,
                            const PriceSchedule& prices);

struct Subscriber {
    std::string id;
    LoadCurve load;
};

struct Source {
    std::string id;
    LoadCurve generation;
    PricePlan plan;
};

/// Partial load curve of `subscriber` served by `source`.
struct Allocation {
    std::string subscriber;
    std::string source;
    LoadCurve partial;
};

/// Single-bus ideal system: generation and load balance pointwise.
struct Scenario {
    TimeInterval interval;
    std::vector<Source> sources;
    std::vector<Subscriber> subscribers;
    std::vector<Allocation> allocation;
    int order = kDefaultOrder;

    /// Checks ids, intervals, bus balance and (when present) the allocation
    /// sums. Throws ErrorKind::BusImbalance or ErrorKind::InvalidArgument.
    void validate() const;
};

/// Money flow at one frequency across all parties.
struct FrequencyFlow {
    int n = 0;
    double billed = 0.0;
    double earned = 0.0;
    double unallocated = 0.0;
};

struct AuditReport {
    double bills_total = 0.0;
    double incomes_total = 0.0;
    double unallocated_total = 0.0;
    /// bills - incomes - unallocated
    double money_residual = 0.0;
    double money_tolerance = 0.0;
    double load_energy = 0.0;
    double generation_energy = 0.0;
    double energy_tolerance = 0.0;
    bool money_ok = true;
    bool energy_ok = true;
    /// Parties with a negative total (allowed, but surfaced).
    std::vector<std::string> negative_totals;
    std::vector<FrequencyFlow> flows;

    bool passed() const noexcept { return money_ok && energy_ok; }
};

struct OneSourceMultiResult {
    std::vector<BillBreakdown> bills;
    BillBreakdown source_income;
    SignedPrices prices;
};

struct MultiSourceOneResult {
    std::vector<BillBreakdown> per_source;
    double total = 0.0;
};

struct MultiMultiResult {
    std::vector<BillBreakdown> bills;
    std::vector<BillBreakdown> incomes;
    EquivalentPrices equivalent;
    AuditReport audit;
};

struct AllocatedResult {
    /// One bill per (subscriber, source) pair with id "subscriber@source".
    std::vector<BillBreakdown> pair_bills;
    std::vector<BillBreakdown> bills;
    std::vector<BillBreakdown> incomes;
    AuditReport audit;
};

/// One source matching one load exactly.
BillBreakdown settle_one_one(const LoadCurve& load, const PricePlan& plan,
                             int order = kDefaultOrder, std::string id = "load");

/// One source serving every subscriber: prices resolve against the aggregate
/// spectrum; each subscriber pays for its own coefficients.
OneSourceMultiResult settle_one_source_multi(std::span<const Subscriber> loads,
                                             const PricePlan& plan, int order = kDefaultOrder,
                                             std::string source_id = "source");

/// One subscriber served by several sources. Each element of `partials`
/// carries the partial curve served by that source and the source's plan;
/// prices resolve against each partial. The partials must sum to `load`.
MultiSourceOneResult settle_multi_source_one(const LoadCurve& load,
                                             std::span<const Source> partials,
                                             int order = kDefaultOrder);

/// Multi-source multi-subscriber settlement through equivalent prices; no
/// per-pair allocation needed. Source incomes use each source's own spectrum
/// and signed prices.
MultiMultiResult settle_multi_multi(const Scenario& scenario);

/// Settlement with an explicit allocation p_ji: each pair is billed with the
/// serving source's prices, resolved against that source's generation.
AllocatedResult settle_allocated(const Scenario& scenario);

/// Checks sum(bills) = sum(incomes) + sum(unallocated) to 1e-6 of the bill
/// scale, and load energy = generation energy.
AuditReport audit_conservation(const Scenario& scenario, std::span<const BillBreakdown> bills,
                               std::span<const BillBreakdown> incomes,
                               std::span<const UnallocatedAmount> unallocated = {});

}  // namespace dynprice
