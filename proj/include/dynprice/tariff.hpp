#pragma once

#include "dynprice/spectrum.hpp"

#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace dynprice {

struct ConstantForm {
    double c = 0.0;
};

/// k * log10(f - s) + c
struct LogShiftForm {
    double k = 0.0;
    double s = 0.0;
    double c = 0.0;
};

using PieceForm = std::variant<ConstantForm, LogShiftForm>;

/// One piece of a price-frequency magnitude function, active on [f_lo, f_hi).
struct PricePiece {
    double f_lo = 0.0;
    double f_hi = std::numeric_limits<double>::infinity();
    PieceForm form;

    double evaluate(double f) const;
};

/// Piecewise magnitude function f -> |lambda(f)|. The pieces tile [0, inf)
/// in order, without gaps or overlaps.
class PriceFunction {
public:
    explicit PriceFunction(std::vector<PricePiece> pieces);

    static PriceFunction constant(double c);

    /// Throws ErrorKind::PlanCoverage when no piece covers f, and
    /// ErrorKind::InvalidArgument when the magnitude comes out negative.
    double operator()(double f) const;

    const std::vector<PricePiece>& pieces() const noexcept { return pieces_; }

private:
    std::vector<PricePiece> pieces_;
};

/// Price-frequency coefficient plan attached to a source. |alpha(0)| > 0.
class PricePlan {
public:
    PricePlan(std::string name, PriceFunction alpha, PriceFunction beta);

    const std::string& name() const noexcept { return name_; }
    const PriceFunction& alpha() const noexcept { return alpha_; }
    const PriceFunction& beta() const noexcept { return beta_; }

private:
    std::string name_;
    PriceFunction alpha_;
    PriceFunction beta_;
};

/// Signed unit prices for one harmonic.
struct HarmonicPrice {
    int n = 0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Energy price plus per-harmonic prices, sorted by n.
struct PriceSchedule {
    double alpha0 = 0.0;
    std::vector<HarmonicPrice> harmonics;

    const HarmonicPrice* find(int n) const noexcept;
};

struct SignedPrices {
    std::string plan_name;
    PriceSchedule schedule;
};

/// Money that cannot be carried by an equivalent price because the bus-level
/// demand coefficient at that harmonic vanishes. `amount` is
/// -T0 * sum_i (alpha_in a_ni + beta_in b_ni) over the degenerate components:
/// sources earn it, no subscriber is billed for it, so
/// sum(bills) = sum(incomes) + sum(unallocated).
struct UnallocatedAmount {
    int n = 0;
    double amount = 0.0;
};

struct EquivalentPrices {
    PriceSchedule schedule;
    std::vector<UnallocatedAmount> unallocated;
};

/// Resolves signed prices against the supply-side spectrum: magnitudes come
/// from the plan at n f0, signs follow the supply coefficient (+ when it is 0).
/// Harmonics listed in `extra` are resolved too, even when absent from the
/// supply spectrum.
SignedPrices resolve_prices(const PricePlan& plan, const FourierSpectrum& supply,
                            std::span<const int> extra = {});

struct PricedSource {
    SignedPrices prices;
    FourierSpectrum spectrum;
};

/// Bus-level equivalent price coefficients:
///   alpha0' = sum_i alpha_i0 a_0i / sum_j a_j0, and likewise per harmonic.
/// Harmonics whose demand total is below 1e-9 of the bus scale get price 0
/// and their negated numerator is recorded as unallocated money.
EquivalentPrices equivalent_prices(std::span<const PricedSource> sources,
                                   std::span<const FourierSpectrum> demand);

/// Largest relative defect of the identities
///   sum_i alpha_in a_ni = alpha_n' sum_j a_jn   (and for beta, alpha0)
/// over the non-degenerate components.
double equivalence_defect(std::span<const PricedSource> sources,
                          std::span<const FourierSpectrum> demand,
                          const EquivalentPrices& equivalent);

/// Relative tolerance for bus balance of spectra and curves.
inline constexpr double kBusBalanceTolerance = 1e-6;
/// Relative threshold below which a bus-level demand coefficient is degenerate.
inline constexpr double kDegenerateTolerance = 1e-9;

}  // namespace dynprice
