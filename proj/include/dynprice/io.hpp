#pragma once

#include "dynprice/curve.hpp"
#include "dynprice/settlement.hpp"
#include "dynprice/spectrum.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace dynprice {

/// Shortest decimal text that round-trips to the same double.
std::string format_number(double value);

/// Meter CSV: header `t,p`, then strictly increasing, uniformly spaced t.
/// The interval is [first t, last t]. Non-finite values are rejected.
LoadCurve read_meter_csv(std::istream& in);
LoadCurve read_meter_csv(const std::filesystem::path& path);

/// `t,p` rows sampling p on the closed uniform grid.
void write_curve_samples(std::ostream& out, const LoadCurve& p, std::size_t samples);

/// Rows `n,a_n,b_n` with `0,a0,0` first.
void write_spectrum_csv(std::ostream& out, const FourierSpectrum& s);

struct SpectrumRows {
    double a0 = 0.0;
    std::vector<SpectralLine> lines;
};

SpectrumRows read_spectrum_csv(std::istream& in);
SpectrumRows read_spectrum_csv(const std::filesystem::path& path);

/// Rows `subscriber,n,kind,coefficient,price,charge`.
void write_bill_csv(std::ostream& out, const BillBreakdown& bill, bool header = true);

/// Aligned human-readable breakdown with non-dynamic, dynamic and total rows.
void write_bill_table(std::ostream& out, const BillBreakdown& bill);

void write_equivalent_prices_csv(std::ostream& out, const EquivalentPrices& prices);

void write_audit(std::ostream& out, const AuditReport& audit);

}  // namespace dynprice
