#include "dynprice/error.hpp"
#include "dynprice/io.hpp"
#include "dynprice/scenario_file.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace dynprice {
namespace {

LoadCurve meter(const std::string& text) {
    std::istringstream in(text);
    return read_meter_csv(in);
}

ErrorKind parse_kind(const std::string& text) {
    try {
        parse_scenario(text, ".");
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "scenario accepted:\n" << text;
    return ErrorKind::InvalidArgument;
}

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(format_number(0.0), "0");
    EXPECT_EQ(format_number(-0.0), "0");
    EXPECT_EQ(format_number(20.0), "20");
    EXPECT_EQ(format_number(0.1), "0.1");
    const double x = 1.0 / 3.0;
    EXPECT_EQ(std::stod(format_number(x)), x);
}

TEST(MeterCsv, ReadsUniformSamples) {
    const auto c = meter("t,p\n0,1\n0.5,2\n1,3\n");
    EXPECT_EQ(c.interval(), TimeInterval(0, 1));
    EXPECT_EQ(c.sampled_body().values, (std::vector<double>{1, 2, 3}));
    EXPECT_NO_THROW(meter("t,p\r\n2,1\r\n4,1\r\n"));
}

TEST(MeterCsv, Rejections) {
    EXPECT_THROW(meter(""), Error);
    EXPECT_THROW(meter("time,power\n0,1\n1,1\n"), Error);
    EXPECT_THROW(meter("t,p\n0,1\n"), Error);
    EXPECT_THROW(meter("t,p\n0,1\n1,1\n1.5,1\n"), Error);
    EXPECT_THROW(meter("t,p\n0,1\n1,x\n"), Error);
    EXPECT_THROW(meter("t,p\n0,1\n1,nan\n"), Error);
    EXPECT_THROW(meter("t,p\n0,1\n1,inf\n"), Error);
    EXPECT_THROW(meter("t,p\n1,1\n0,1\n"), Error);
    EXPECT_THROW(read_meter_csv(std::filesystem::path("/nonexistent/meter.csv")), Error);
}

TEST(SpectrumCsv, RoundTrip) {
    const auto s = decompose(test::p1(), 100);
    std::stringstream io;
    write_spectrum_csv(io, s);
    EXPECT_EQ(io.str(), "n,a_n,b_n\n0,100,0\n5,0,20\n20,10,0\n100,0,5\n");
    const auto rows = read_spectrum_csv(io);
    EXPECT_EQ(rows.a0, 100);
    EXPECT_EQ(rows.lines, s.lines());
}

TEST(SpectrumCsv, Rejections) {
    auto read = [](const std::string& text) {
        std::istringstream in(text);
        return read_spectrum_csv(in);
    };
    EXPECT_THROW(read("n,a_n,b_n\n5,1,1\n"), Error);
    EXPECT_THROW(read("n,a_n,b_n\n0,1,0\n0,2,0\n"), Error);
    EXPECT_THROW(read("n,a_n,b_n\n0,1,0\n-3,2,0\n"), Error);
    EXPECT_THROW(read("n,a,b\n0,1,0\n"), Error);
}

TEST(BillCsv, HeaderAndRows) {
    const auto bill = settle_one_one(test::p1(), test::plan1(), 128, "load1");
    std::ostringstream out;
    write_bill_csv(out, bill);
    const auto text = out.str();
    EXPECT_EQ(text.substr(0, text.find('\n')), "subscriber,n,kind,coefficient,price,charge");
    EXPECT_NE(text.find("load1,0,a0,100,20,1000\n"), std::string::npos);
    EXPECT_NE(text.find("load1,5,b,20,20,400\n"), std::string::npos);

    std::ostringstream table;
    write_bill_table(table, bill);
    EXPECT_NE(table.str().find("1769.0309"), std::string::npos);
}

TEST(Audit, TextReport) {
    AuditReport r;
    r.money_ok = false;
    std::ostringstream out;
    write_audit(out, r);
    EXPECT_NE(out.str().find("FAIL"), std::string::npos);
}

constexpr const char* kMinimal = R"({
  "interval": [0, 1],
  "topology": "one-source-multi",
  "plans": {"p": {"alpha": [{"f_lo": 0, "form": "constant", "c": 20}]}},
  "sources": [{"id": "g", "plan": "p", "curve": {"mean": 10}}],
  "subscribers": [{"id": "l", "curve": {"mean": 10}}]
})";

TEST(ScenarioFile, ParsesMinimalDocument) {
    const auto f = parse_scenario(kMinimal, ".");
    EXPECT_EQ(f.topology, Topology::OneSourceMulti);
    EXPECT_EQ(f.scenario.order, kDefaultOrder);
    EXPECT_EQ(f.plans.size(), 1u);
    ASSERT_TRUE(find_curve(f, "l").has_value());
    EXPECT_FALSE(find_curve(f, "nobody").has_value());
    EXPECT_NEAR(settle(f).bills[0].total, 200, 1e-12);
}

std::string with(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    EXPECT_NE(at, std::string::npos) << from;
    return text.replace(at, from.size(), to);
}

TEST(ScenarioFile, Rejections) {
    const std::string base = kMinimal;
    EXPECT_EQ(parse_kind("{"), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(with(base, "\"topology\"", "\"topologie\"")), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(with(base, "one-source-multi", "star")), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(with(base, "\"plan\": \"p\"", "\"plan\": \"q\"")), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(with(base, "\"id\": \"l\"", "\"id\": \"g\"")), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(with(base, "\"id\": \"l\"", "\"id\": \"a b\"")), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(with(base, "[0, 1]", "[1, 0]")), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(with(base, "\"constant\"", "\"cubic\"")), ErrorKind::Parse);
    EXPECT_EQ(parse_kind(with(base, "\"l\", \"curve\": {\"mean\": 10}", "\"l\", \"curve\": {\"csv\": \"missing.csv\"}")),
              ErrorKind::Parse);
}

TEST(ScenarioFile, ShippedScenariosLoad) {
    for (const char* name : {"two_plans.scn", "split_load.scn", "one_source.scn", "three_by_three.scn", "toy.scn"}) {
        EXPECT_NO_THROW(load_scenario(std::filesystem::path(DYNPRICE_SCENARIO_DIR) / name)) << name;
    }
}

}  // namespace
}  // namespace dynprice
