#include "dynprice/cli.hpp"

#include "dynprice/error.hpp"
#include "dynprice/io.hpp"
#include "dynprice/scenario_file.hpp"
#include "dynprice/spectrum.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <optional>
#include <ostream>

namespace dynprice::cli {

namespace fs = std::filesystem;

namespace {

int exit_code(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Aliasing: return kAliasing;
        case ErrorKind::BusImbalance:
        case ErrorKind::ZeroEnergy: return kImbalance;
        default: return kParse;
    }
}

std::ofstream create(const fs::path& path) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::Parse, fmt::format("cannot write '{}'", path.string()));
    }
    return out;
}

LoadCurve curve_from_scenario(const fs::path& scenario, const std::string& id) {
    const auto file = load_scenario(scenario);
    auto curve = find_curve(file, id);
    if (!curve) {
        throw Error(ErrorKind::Parse,
                    fmt::format("no source or subscriber '{}' in '{}'", id, scenario.string()));
    }
    return *curve;
}

struct DecomposeOptions {
    std::string scenario;
    std::string input;
    std::string curve;
    std::optional<int> order;
    std::string out;
};

int run_decompose(const DecomposeOptions& opt, std::ostream& err) {
    if (opt.input.empty() == opt.scenario.empty()) {
        fmt::print(err, "decompose: give either --input CSV or --scenario PATH --curve ID\n");
        return kParse;
    }
    std::optional<LoadCurve> curve;
    int order = opt.order.value_or(kDefaultOrder);
    if (!opt.input.empty()) {
        curve = read_meter_csv(fs::path(opt.input));
    } else {
        if (opt.curve.empty()) {
            fmt::print(err, "decompose: --scenario needs --curve ID\n");
            return kParse;
        }
        if (!opt.order) {
            order = load_scenario(opt.scenario).scenario.order;
        }
        curve = curve_from_scenario(opt.scenario, opt.curve);
    }
    const auto spectrum = decompose(*curve, order);
    auto out = create(opt.out);
    write_spectrum_csv(out, spectrum);
    return kOk;
}

struct SettleOptions {
    std::string scenario;
    std::string out;
    std::string format = "csv";
};

int run_settle(const SettleOptions& opt, std::ostream& err) {
    const auto file = load_scenario(opt.scenario);
    const auto report = settle(file);
    const fs::path dir(opt.out);
    fs::create_directories(dir);

    const bool table = opt.format == "table";
    const auto ext = table ? ".txt" : ".csv";
    auto write = [&](const std::string& prefix, const BillBreakdown& bill) {
        auto out = create(dir / (prefix + bill.id + ext));
        if (table) {
            write_bill_table(out, bill);
        } else {
            write_bill_csv(out, bill);
        }
    };
    for (const auto& bill : report.bills) {
        write("bill_", bill);
    }
    for (const auto& income : report.incomes) {
        write("income_", income);
    }
    if (report.equivalent) {
        auto out = create(dir / "equivalent_prices.csv");
        write_equivalent_prices_csv(out, *report.equivalent);
    }
    {
        auto out = create(dir / "audit.txt");
        write_audit(out, report.audit);
    }
    if (!report.audit.passed()) {
        fmt::print(err, "settle: audit failed (money residual {:.3e}, energy gap {:.3e})\n",
                   report.audit.money_residual,
                   report.audit.load_energy - report.audit.generation_energy);
        return kAuditFailure;
    }
    return kOk;
}

struct PlotOptions {
    std::string scenario;
    std::string curve;
    std::size_t samples = 1000;
    std::string out;
};

int run_plot(const PlotOptions& opt) {
    const auto curve = curve_from_scenario(opt.scenario, opt.curve);
    auto out = create(opt.out);
    write_curve_samples(out, curve, opt.samples);
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& err) {
    CLI::App app{"Price electricity consumption by the spectral dynamism of load curves"};
    app.require_subcommand(1);

    DecomposeOptions dec;
    auto* cmd_dec = app.add_subcommand("decompose", "Write the Fourier spectrum of a curve");
    cmd_dec->add_option("--input", dec.input, "Meter CSV (header t,p)");
    cmd_dec->add_option("--scenario", dec.scenario, "Scenario file");
    cmd_dec->add_option("--curve", dec.curve, "Source or subscriber id in the scenario");
    cmd_dec->add_option("--order", dec.order, "Truncation order N")->check(CLI::PositiveNumber);
    cmd_dec->add_option("--out", dec.out, "Spectrum CSV to write")->required();

    SettleOptions set;
    auto* cmd_set = app.add_subcommand("settle", "Settle a scenario and audit conservation");
    cmd_set->add_option("--scenario", set.scenario, "Scenario file")->required();
    cmd_set->add_option("--out", set.out, "Output directory")->required();
    cmd_set->add_option("--format", set.format, "Breakdown format")
        ->check(CLI::IsMember({"csv", "table"}));

    PlotOptions plot;
    auto* cmd_plot = app.add_subcommand("plot-data", "Sample a curve for plotting");
    cmd_plot->add_option("--scenario", plot.scenario, "Scenario file")->required();
    cmd_plot->add_option("--curve", plot.curve, "Source or subscriber id")->required();
    cmd_plot->add_option("--samples", plot.samples, "Number of samples")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
    cmd_plot->add_option("--out", plot.out, "CSV to write")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        fmt::print(err, "{}", app.help());
        return kOk;
    } catch (const CLI::ParseError& e) {
        fmt::print(err, "{}\n", e.what());
        return kParse;
    }

    try {
        if (cmd_dec->parsed()) {
            return run_decompose(dec, err);
        }
        if (cmd_set->parsed()) {
            return run_settle(set, err);
        }
        return run_plot(plot);
    } catch (const Error& e) {
        fmt::print(err, "error ({}): {}\n", to_string(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kParse;
    }
}

}  // namespace dynprice::cli
