#include "dynprice/io.hpp"

#include "dynprice/error.hpp"
#include "dynprice/kernels.hpp"

#include <charconv>
#include <cmath>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

namespace dynprice {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

double parse_double(std::string_view field, std::size_t line_no) {
    double value = 0.0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || field.empty()) {
        throw Error(ErrorKind::Parse,
                    fmt::format("line {}: '{}' is not a number", line_no, field));
    }
    return value;
}

int parse_int(std::string_view field, std::size_t line_no) {
    int value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc{} || ptr != end || field.empty()) {
        throw Error(ErrorKind::Parse,
                    fmt::format("line {}: '{}' is not an integer", line_no, field));
    }
    return value;
}

std::ifstream open(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Parse, fmt::format("cannot open '{}'", path.string()));
    }
    return in;
}

}  // namespace

std::string format_number(double value) {
    if (value == 0.0) {
        return "0";
    }
    return fmt::format("{}", value);
}

LoadCurve read_meter_csv(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::vector<double> times;
    std::vector<double> values;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty()) {
            continue;
        }
        const auto fields = split(text);
        if (!header) {
            if (fields.size() != 2 || fields[0] != "t" || fields[1] != "p") {
                throw Error(ErrorKind::Parse,
                            fmt::format("line {}: expected header 't,p'", line_no));
            }
            header = true;
            continue;
        }
        if (fields.size() != 2) {
            throw Error(ErrorKind::Parse,
                        fmt::format("line {}: expected 2 fields, got {}", line_no, fields.size()));
        }
        times.push_back(parse_double(fields[0], line_no));
        values.push_back(parse_double(fields[1], line_no));
    }
    if (!header) {
        throw Error(ErrorKind::Parse, "meter CSV is empty");
    }
    if (times.size() < 2) {
        throw Error(ErrorKind::Parse,
                    fmt::format("meter CSV needs at least 2 samples, got {}", times.size()));
    }
    for (double t : times) {
        if (!std::isfinite(t)) {
            throw Error(ErrorKind::Parse, "meter CSV has a non-finite timestamp");
        }
    }
    const TimeInterval interval(times.front(), times.back());
    const double step = interval.length() / static_cast<double>(times.size() - 1);
    for (std::size_t k = 1; k < times.size(); ++k) {
        if (!(times[k] > times[k - 1])) {
            throw Error(ErrorKind::Parse,
                        fmt::format("timestamps must increase strictly (sample {})", k));
        }
        if (std::abs(times[k] - grid_time(interval, times.size(), k)) > 1e-6 * step) {
            throw Error(ErrorKind::Parse,
                        fmt::format("timestamps are not uniformly spaced (sample {})", k));
        }
    }
    return LoadCurve::sampled(interval, std::move(values));
}

LoadCurve read_meter_csv(const std::filesystem::path& path) {
    auto in = open(path);
    return read_meter_csv(in);
}

void write_curve_samples(std::ostream& out, const LoadCurve& p, std::size_t samples) {
    if (samples < 2) {
        throw Error(ErrorKind::InvalidArgument, "plot data needs at least 2 samples");
    }
    const auto& interval = p.interval();
    std::vector<double> values(samples);
    if (p.is_trig()) {
        kernels::evaluate_trig(p.trig_body(), interval, values);
    } else {
        for (std::size_t k = 0; k < samples; ++k) {
            values[k] = p(grid_time(interval, samples, k));
        }
    }
    fmt::print(out, "t,p\n");
    for (std::size_t k = 0; k < samples; ++k) {
        fmt::print(out, "{},{}\n", format_number(grid_time(interval, samples, k)),
                   format_number(values[k]));
    }
}

void write_spectrum_csv(std::ostream& out, const FourierSpectrum& s) {
    fmt::print(out, "n,a_n,b_n\n0,{},0\n", format_number(s.a0()));
    for (const auto& line : s.lines()) {
        fmt::print(out, "{},{},{}\n", line.n, format_number(line.a), format_number(line.b));
    }
}

SpectrumRows read_spectrum_csv(std::istream& in) {
    SpectrumRows rows;
    std::string line;
    std::size_t line_no = 0;
    bool seen_zero = false;
    while (std::getline(in, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || (line_no == 1 && text == "n,a_n,b_n")) {
            continue;
        }
        const auto fields = split(text);
        if (fields.size() != 3) {
            throw Error(ErrorKind::Parse,
                        fmt::format("line {}: expected 'n,a_n,b_n'", line_no));
        }
        const int n = parse_int(fields[0], line_no);
        const double a = parse_double(fields[1], line_no);
        const double b = parse_double(fields[2], line_no);
        if (n == 0) {
            if (seen_zero) {
                throw Error(ErrorKind::Parse, fmt::format("line {}: second a0 row", line_no));
            }
            seen_zero = true;
            rows.a0 = a;
        } else if (n > 0) {
            rows.lines.push_back({n, a, b});
        } else {
            throw Error(ErrorKind::Parse, fmt::format("line {}: negative harmonic", line_no));
        }
    }
    if (!seen_zero) {
        throw Error(ErrorKind::Parse, "spectrum CSV has no a0 row");
    }
    return rows;
}

SpectrumRows read_spectrum_csv(const std::filesystem::path& path) {
    auto in = open(path);
    return read_spectrum_csv(in);
}

void write_bill_csv(std::ostream& out, const BillBreakdown& bill, bool header) {
    if (header) {
        fmt::print(out, "subscriber,n,kind,coefficient,price,charge\n");
    }
    for (const auto& line : bill.lines) {
        fmt::print(out, "{},{},{},{},{},{}\n", bill.id, line.n, to_string(line.kind),
                   format_number(line.coefficient), format_number(line.price),
                   format_number(line.charge));
    }
}

void write_bill_table(std::ostream& out, const BillBreakdown& bill) {
    fmt::print(out, "Breakdown: {}\n", bill.id);
    fmt::print(out, "{:>6} {:>5} {:>14} {:>14} {:>16}\n", "n", "item", "coefficient", "price",
               "payment");
    for (const auto& line : bill.lines) {
        const auto item = line.kind == LineKind::Energy
                              ? std::string("a0")
                              : fmt::format("{}{}", to_string(line.kind), line.n);
        fmt::print(out, "{:>6} {:>5} {:>14.4f} {:>14.4f} {:>16.4f}\n", line.n, item,
                   line.coefficient, line.price, line.charge);
    }
    fmt::print(out, "{:<42} {:>16.4f}\n", "Non-dyn.", bill.non_dynamic_total);
    fmt::print(out, "{:<42} {:>16.4f}\n", "Dyn.", bill.dynamic_total);
    fmt::print(out, "{:<42} {:>16.4f}\n", "Total", bill.total);
}

void write_equivalent_prices_csv(std::ostream& out, const EquivalentPrices& prices) {
    fmt::print(out, "n,alpha,beta\n0,{},0\n", format_number(prices.schedule.alpha0));
    for (const auto& h : prices.schedule.harmonics) {
        fmt::print(out, "{},{},{}\n", h.n, format_number(h.alpha), format_number(h.beta));
    }
}

void write_audit(std::ostream& out, const AuditReport& audit) {
    fmt::print(out, "status: {}\n", audit.passed() ? "PASS" : "FAIL");
    fmt::print(out, "money: {}\n", audit.money_ok ? "balanced" : "UNBALANCED");
    fmt::print(out, "  bills_total: {:.6f}\n", audit.bills_total);
    fmt::print(out, "  incomes_total: {:.6f}\n", audit.incomes_total);
    fmt::print(out, "  unallocated_total: {:.6f}\n", audit.unallocated_total);
    fmt::print(out, "  residual: {:.3e}\n", audit.money_residual);
    fmt::print(out, "  tolerance: {:.3e}\n", audit.money_tolerance);
    fmt::print(out, "energy: {}\n", audit.energy_ok ? "balanced" : "UNBALANCED");
    fmt::print(out, "  load: {:.6f}\n", audit.load_energy);
    fmt::print(out, "  generation: {:.6f}\n", audit.generation_energy);
    fmt::print(out, "  tolerance: {:.3e}\n", audit.energy_tolerance);
    fmt::print(out, "negative_totals:");
    for (const auto& id : audit.negative_totals) {
        fmt::print(out, " {}", id);
    }
    fmt::print(out, "\nflows (n, billed, earned, unallocated):\n");
    for (const auto& f : audit.flows) {
        fmt::print(out, "{:>6} {:>16.6f} {:>16.6f} {:>16.6f}\n", f.n, f.billed, f.earned,
                   f.unallocated);
    }
}

}  // namespace dynprice
