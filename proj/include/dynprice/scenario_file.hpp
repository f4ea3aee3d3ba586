#pragma once

#include "dynprice/settlement.hpp"
#include "dynprice/tariff.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dynprice {

enum class Topology { OneOne, OneSourceMulti, MultiSourceOne, MultiMulti };

const char* to_string(Topology topology) noexcept;

/// Bills `subscriber` as if served alone by a source on `plan`.
struct Pairing {
    std::string subscriber;
    std::string plan;
};

/// Parsed and schema-checked scenario document. See README for the format.
struct ScenarioFile {
    Scenario scenario;
    Topology topology = Topology::MultiMulti;
    std::map<std::string, PricePlan> plans;
    std::vector<Pairing> pairings;
};

/// Throws ErrorKind::Parse on malformed input or unresolved ids. Relative
/// CSV paths resolve against `base_dir`.
ScenarioFile parse_scenario(std::string_view text, const std::filesystem::path& base_dir);
ScenarioFile load_scenario(const std::filesystem::path& path);

/// Source or subscriber curve by id; nullopt when unknown.
std::optional<LoadCurve> find_curve(const ScenarioFile& file, std::string_view id);

struct SettlementReport {
    std::vector<BillBreakdown> bills;
    std::vector<BillBreakdown> incomes;
    std::optional<EquivalentPrices> equivalent;
    AuditReport audit;
};

/// Runs the settlement selected by the file's topology, then the audit.
SettlementReport settle(const ScenarioFile& file);

}  // namespace dynprice
