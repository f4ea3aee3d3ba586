#include "dynprice/scenario_file.hpp"

#include "dynprice/error.hpp"
#include "dynprice/io.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <fstream>
#include <initializer_list>
#include <json.hpp>
#include <limits>
#include <regex>
#include <set>
#include <sstream>

namespace dynprice {

using nlohmann::json;

const char* to_string(Topology topology) noexcept {
    switch (topology) {
        case Topology::OneOne: return "one-one";
        case Topology::OneSourceMulti: return "one-source-multi";
        case Topology::MultiSourceOne: return "multi-source-one";
        case Topology::MultiMulti: return "multi-multi";
    }
    return "?";
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::Parse, fmt::format("{}: {}", where, what));
}

void allow_keys(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) {
        fail(where, "expected an object");
    }
    for (const auto& [key, value] : obj.items()) {
        if (std::none_of(keys.begin(), keys.end(), [&](const char* k) { return key == k; })) {
            fail(where, fmt::format("unknown key '{}'", key));
        }
    }
}

const json& required(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) {
        fail(where, fmt::format("missing key '{}'", key));
    }
    return obj.at(key);
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) {
        fail(where, "expected a number");
    }
    return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj.at(key), where + "." + key) : fallback;
}

std::string identifier(const json& v, const std::string& where) {
    static const std::regex pattern("[A-Za-z0-9_.-]+");
    if (!v.is_string() || !std::regex_match(v.get<std::string>(), pattern)) {
        fail(where, "expected an identifier of letters, digits, '_', '.' or '-'");
    }
    return v.get<std::string>();
}

double upper_bound(const json& obj, const std::string& where) {
    if (!obj.contains("f_hi") || obj.at("f_hi").is_null()) {
        return std::numeric_limits<double>::infinity();
    }
    const auto& v = obj.at("f_hi");
    if (v.is_string() && v.get<std::string>() == "inf") {
        return std::numeric_limits<double>::infinity();
    }
    return number(v, where + ".f_hi");
}

PriceFunction parse_price_function(const json& pieces, const std::string& where) {
    if (!pieces.is_array()) {
        fail(where, "expected a list of pieces");
    }
    std::vector<PricePiece> out;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const auto at = fmt::format("{}[{}]", where, i);
        const auto& p = pieces[i];
        allow_keys(p, at, {"f_lo", "f_hi", "form", "k", "s", "c"});
        PricePiece piece;
        piece.f_lo = number(required(p, "f_lo", at), at + ".f_lo");
        piece.f_hi = upper_bound(p, at);
        const auto& form = required(p, "form", at);
        if (form == "constant") {
            piece.form = ConstantForm{number(required(p, "c", at), at + ".c")};
        } else if (form == "log_shift") {
            piece.form = LogShiftForm{number(required(p, "k", at), at + ".k"),
                                      number_or(p, "s", 0.0, at), number(required(p, "c", at), at + ".c")};
        } else {
            fail(at, "form must be 'constant' or 'log_shift'");
        }
        out.push_back(piece);
    }
    return PriceFunction(std::move(out));
}

LoadCurve parse_curve(const json& c, const TimeInterval& interval,
                      const std::filesystem::path& base_dir, const std::string& where) {
    allow_keys(c, where, {"mean", "terms", "csv", "spectrum"});
    const int forms = int(c.contains("csv")) + int(c.contains("spectrum")) +
                      int(c.contains("mean") || c.contains("terms"));
    if (forms != 1) {
        fail(where, "give exactly one of {mean, terms}, csv or spectrum");
    }
    if (c.contains("csv")) {
        const auto& path = c.at("csv");
        if (!path.is_string()) {
            fail(where + ".csv", "expected a path");
        }
        auto curve = read_meter_csv(base_dir / path.get<std::string>());
        const auto& got = curve.interval();
        const double tol = 1e-9 * interval.length();
        if (std::abs(got.t1() - interval.t1()) > tol || std::abs(got.t2() - interval.t2()) > tol) {
            fail(where, fmt::format("meter data spans [{}, {}], scenario interval is [{}, {}]",
                                    got.t1(), got.t2(), interval.t1(), interval.t2()));
        }
        return LoadCurve::sampled(interval, curve.sampled_body().values);
    }
    if (c.contains("spectrum")) {
        const auto& path = c.at("spectrum");
        if (!path.is_string()) {
            fail(where + ".spectrum", "expected a path");
        }
        const auto rows = read_spectrum_csv(base_dir / path.get<std::string>());
        std::vector<Harmonic> harmonics;
        for (const auto& line : rows.lines) {
            harmonics.push_back({line.n, line.a, line.b});
        }
        return LoadCurve::trig(interval, 0.5 * rows.a0, std::move(harmonics));
    }
    const double mean = number_or(c, "mean", 0.0, where);
    std::vector<Harmonic> harmonics;
    if (c.contains("terms")) {
        const auto& terms = c.at("terms");
        if (!terms.is_array()) {
            fail(where + ".terms", "expected a list");
        }
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const auto at = fmt::format("{}.terms[{}]", where, i);
            allow_keys(terms[i], at, {"n", "cos", "sin"});
            const auto& n = required(terms[i], "n", at);
            if (!n.is_number_integer()) {
                fail(at + ".n", "expected an integer harmonic index");
            }
            harmonics.push_back({n.get<int>(), number_or(terms[i], "cos", 0.0, at),
                                 number_or(terms[i], "sin", 0.0, at)});
        }
    }
    return LoadCurve::trig(interval, mean, std::move(harmonics));
}

Topology parse_topology(const json& v) {
    for (auto t : {Topology::OneOne, Topology::OneSourceMulti, Topology::MultiSourceOne,
                   Topology::MultiMulti}) {
        if (v == to_string(t)) {
            return t;
        }
    }
    fail("topology", "expected one-one, one-source-multi, multi-source-one or multi-multi");
}

ScenarioFile parse_document(const json& doc, const std::filesystem::path& base_dir) {
    allow_keys(doc, "scenario",
               {"interval", "order", "topology", "plans", "sources", "subscribers", "allocation",
                "pairings"});
    const auto& iv = required(doc, "interval", "scenario");
    if (!iv.is_array() || iv.size() != 2) {
        fail("interval", "expected [t1, t2]");
    }
    const TimeInterval interval(number(iv[0], "interval[0]"), number(iv[1], "interval[1]"));

    int order = kDefaultOrder;
    if (doc.contains("order")) {
        if (!doc.at("order").is_number_integer() || doc.at("order").get<int>() < 1) {
            fail("order", "expected a positive integer");
        }
        order = doc.at("order").get<int>();
    }

    ScenarioFile file{Scenario{interval, {}, {}, {}, order},
                      parse_topology(required(doc, "topology", "scenario")),
                      {},
                      {}};

    if (doc.contains("plans")) {
        const auto& plans = doc.at("plans");
        if (!plans.is_object()) {
            fail("plans", "expected an object keyed by plan name");
        }
        for (const auto& [name, body] : plans.items()) {
            const auto where = "plans." + name;
            identifier(json(name), where);
            allow_keys(body, where, {"alpha", "beta"});
            auto alpha = parse_price_function(required(body, "alpha", where), where + ".alpha");
            auto beta = body.contains("beta")
                            ? parse_price_function(body.at("beta"), where + ".beta")
                            : alpha;
            file.plans.emplace(name, PricePlan(name, std::move(alpha), std::move(beta)));
        }
    }

    auto plan_named = [&](const json& v, const std::string& where) -> const PricePlan& {
        const auto name = identifier(v, where);
        auto it = file.plans.find(name);
        if (it == file.plans.end()) {
            fail(where, fmt::format("unknown plan '{}'", name));
        }
        return it->second;
    };

    std::set<std::string> ids;
    auto fresh_id = [&](const json& v, const std::string& where) {
        auto id = identifier(v, where);
        if (!ids.insert(id).second) {
            fail(where, fmt::format("id '{}' is used twice", id));
        }
        return id;
    };

    auto list = [&](const char* key) -> json {
        if (!doc.contains(key)) {
            return json::array();
        }
        if (!doc.at(key).is_array()) {
            fail(key, "expected a list");
        }
        return doc.at(key);
    };

    const auto sources = list("sources");
    for (std::size_t i = 0; i < sources.size(); ++i) {
        const auto where = fmt::format("sources[{}]", i);
        allow_keys(sources[i], where, {"id", "plan", "curve"});
        auto id = fresh_id(required(sources[i], "id", where), where + ".id");
        const auto& plan = plan_named(required(sources[i], "plan", where), where + ".plan");
        auto curve = parse_curve(required(sources[i], "curve", where), interval, base_dir,
                                 where + ".curve");
        file.scenario.sources.push_back({std::move(id), std::move(curve), plan});
    }

    const auto subscribers = list("subscribers");
    for (std::size_t j = 0; j < subscribers.size(); ++j) {
        const auto where = fmt::format("subscribers[{}]", j);
        allow_keys(subscribers[j], where, {"id", "curve"});
        auto id = fresh_id(required(subscribers[j], "id", where), where + ".id");
        auto curve = parse_curve(required(subscribers[j], "curve", where), interval, base_dir,
                                 where + ".curve");
        file.scenario.subscribers.push_back({std::move(id), std::move(curve)});
    }

    auto known = [&](const auto& parties, const std::string& id) {
        return std::ranges::any_of(parties, [&](const auto& p) { return p.id == id; });
    };

    const auto allocation = list("allocation");
    for (std::size_t k = 0; k < allocation.size(); ++k) {
        const auto where = fmt::format("allocation[{}]", k);
        allow_keys(allocation[k], where, {"subscriber", "source", "curve"});
        auto sub = identifier(required(allocation[k], "subscriber", where), where + ".subscriber");
        auto src = identifier(required(allocation[k], "source", where), where + ".source");
        if (!known(file.scenario.subscribers, sub)) {
            fail(where, fmt::format("unknown subscriber '{}'", sub));
        }
        if (!known(file.scenario.sources, src)) {
            fail(where, fmt::format("unknown source '{}'", src));
        }
        auto curve = parse_curve(required(allocation[k], "curve", where), interval, base_dir,
                                 where + ".curve");
        file.scenario.allocation.push_back({std::move(sub), std::move(src), std::move(curve)});
    }

    const auto pairings = list("pairings");
    for (std::size_t k = 0; k < pairings.size(); ++k) {
        const auto where = fmt::format("pairings[{}]", k);
        allow_keys(pairings[k], where, {"subscriber", "plan"});
        auto sub = identifier(required(pairings[k], "subscriber", where), where + ".subscriber");
        if (!known(file.scenario.subscribers, sub)) {
            fail(where, fmt::format("unknown subscriber '{}'", sub));
        }
        const auto& plan = plan_named(required(pairings[k], "plan", where), where + ".plan");
        file.pairings.push_back({std::move(sub), plan.name()});
    }

    const auto n_src = file.scenario.sources.size();
    const auto n_sub = file.scenario.subscribers.size();
    switch (file.topology) {
        case Topology::OneOne:
            if (file.pairings.empty() && (n_src != 1 || n_sub != 1)) {
                fail("topology", "one-one needs pairings or exactly one source and one subscriber");
            }
            break;
        case Topology::OneSourceMulti:
            if (n_src != 1 || n_sub < 1) {
                fail("topology", "one-source-multi needs exactly one source");
            }
            break;
        case Topology::MultiSourceOne:
            if (n_sub != 1 || n_src < 1) {
                fail("topology", "multi-source-one needs exactly one subscriber");
            }
            break;
        case Topology::MultiMulti:
            break;
    }
    if (!file.pairings.empty() && file.topology != Topology::OneOne) {
        fail("pairings", "pairings are only meaningful for the one-one topology");
    }
    return file;
}

BillBreakdown relabel(BillBreakdown bill, std::string id) {
    bill.id = std::move(id);
    return bill;
}

BillBreakdown combine(std::string id, const std::vector<BillBreakdown>& parts) {
    BillBreakdown out{std::move(id), {}, 0.0, 0.0, 0.0};
    for (const auto& p : parts) {
        out.lines.insert(out.lines.end(), p.lines.begin(), p.lines.end());
        out.non_dynamic_total += p.non_dynamic_total;
        out.dynamic_total += p.dynamic_total;
    }
    out.total = out.non_dynamic_total + out.dynamic_total;
    return out;
}

SettlementReport settle_pairings(const ScenarioFile& file) {
    const auto& sc = file.scenario;
    SettlementReport report;
    Scenario audit_view{sc.interval, {}, {}, {}, sc.order};
    for (const auto& pairing : file.pairings) {
        const auto& sub = *std::ranges::find(sc.subscribers, pairing.subscriber, &Subscriber::id);
        const auto& plan = file.plans.at(pairing.plan);
        const auto id = pairing.subscriber + "@" + pairing.plan;
        auto bill = settle_one_one(sub.load, plan, sc.order, id);
        report.incomes.push_back(relabel(bill, id));
        report.bills.push_back(std::move(bill));
        audit_view.subscribers.push_back({id, sub.load});
        audit_view.sources.push_back({id, sub.load, plan});
    }
    report.audit = audit_conservation(audit_view, report.bills, report.incomes);
    return report;
}

}  // namespace

ScenarioFile parse_scenario(std::string_view text, const std::filesystem::path& base_dir) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end(), nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, fmt::format("scenario is not valid JSON: {}", e.what()));
    }
    try {
        return parse_document(doc, base_dir);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, fmt::format("scenario schema error: {}", e.what()));
    } catch (const Error& e) {
        // Bad values inside an otherwise well-formed document are still input errors.
        if (e.kind() == ErrorKind::InvalidArgument || e.kind() == ErrorKind::PlanCoverage) {
            throw Error(ErrorKind::Parse, e.what());
        }
        throw;
    }
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::Parse, fmt::format("cannot open scenario '{}'", path.string()));
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.parent_path());
}

std::optional<LoadCurve> find_curve(const ScenarioFile& file, std::string_view id) {
    for (const auto& s : file.scenario.sources) {
        if (s.id == id) {
            return s.generation;
        }
    }
    for (const auto& s : file.scenario.subscribers) {
        if (s.id == id) {
            return s.load;
        }
    }
    return std::nullopt;
}

SettlementReport settle(const ScenarioFile& file) {
    const auto& sc = file.scenario;
    switch (file.topology) {
        case Topology::OneOne: {
            if (!file.pairings.empty()) {
                return settle_pairings(file);
            }
            sc.validate();
            const auto& src = sc.sources.front();
            const auto& sub = sc.subscribers.front();
            SettlementReport report;
            report.bills.push_back(settle_one_one(sub.load, src.plan, sc.order, sub.id));
            report.incomes.push_back(relabel(report.bills.front(), src.id));
            report.audit = audit_conservation(sc, report.bills, report.incomes);
            return report;
        }
        case Topology::OneSourceMulti: {
            sc.validate();
            const auto& src = sc.sources.front();
            auto r = settle_one_source_multi(sc.subscribers, src.plan, sc.order, src.id);
            SettlementReport report;
            report.bills = std::move(r.bills);
            report.incomes.push_back(std::move(r.source_income));
            report.audit = audit_conservation(sc, report.bills, report.incomes);
            return report;
        }
        case Topology::MultiSourceOne: {
            sc.validate();
            const auto& sub = sc.subscribers.front();
            std::vector<Source> partials;
            for (const auto& src : sc.sources) {
                if (sc.allocation.empty()) {
                    partials.push_back(src);
                    continue;
                }
                auto it = std::ranges::find(sc.allocation, src.id, &Allocation::source);
                if (it != sc.allocation.end()) {
                    partials.push_back({src.id, it->partial, src.plan});
                }
            }
            auto r = settle_multi_source_one(sub.load, partials, sc.order);
            SettlementReport report;
            report.bills.push_back(combine(sub.id, r.per_source));
            report.incomes = std::move(r.per_source);
            report.audit = audit_conservation(sc, report.bills, report.incomes);
            return report;
        }
        case Topology::MultiMulti: {
            SettlementReport report;
            if (!sc.allocation.empty()) {
                auto r = settle_allocated(sc);
                report.bills = std::move(r.bills);
                report.incomes = std::move(r.incomes);
                report.audit = std::move(r.audit);
                return report;
            }
            auto r = settle_multi_multi(sc);
            report.bills = std::move(r.bills);
            report.incomes = std::move(r.incomes);
            report.equivalent = std::move(r.equivalent);
            report.audit = std::move(r.audit);
            return report;
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown topology");
}

}  // namespace dynprice
