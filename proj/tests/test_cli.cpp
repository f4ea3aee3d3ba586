#include "dynprice/cli.hpp"
#include "dynprice/io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dynprice {
namespace {

namespace fs = std::filesystem;

const fs::path kScenarios{DYNPRICE_SCENARIO_DIR};

class Cli : public ::testing::Test {
protected:
    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir_ = fs::temp_directory_path() / (std::string("dynprice_cli_") + info->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "dynprice");
        err_.str("");
        return cli::run(args, err_);
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
    std::ostringstream err_;
};

std::vector<std::vector<double>> rows(const std::string& text) {
    std::vector<std::vector<double>> out;
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::vector<double> r;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, ',')) {
            r.push_back(std::stod(f));
        }
        out.push_back(r);
    }
    return out;
}

double charge_total(const std::string& bill_csv) {
    std::istringstream in(bill_csv);
    std::string line;
    std::getline(in, line);
    double total = 0;
    while (std::getline(in, line)) {
        total += std::stod(line.substr(line.rfind(',') + 1));
    }
    return total;
}

TEST_F(Cli, DecomposeScenarioCurve) {
    const auto out = dir_ / "p1.csv";
    ASSERT_EQ(run({"decompose", "--scenario", (kScenarios / "two_plans.scn").string(), "--curve",
                   "load1", "--order", "100", "--out", out.string()}),
              0)
        << err_.str();
    EXPECT_EQ(slurp(out), "n,a_n,b_n\n0,100,0\n5,0,20\n20,10,0\n100,0,5\n");
}

TEST_F(Cli, DecomposeMeterCsv) {
    const auto out = dir_ / "c.csv";
    ASSERT_EQ(run({"decompose", "--input", (kScenarios / "meters/constant5.csv").string(),
                   "--order", "4", "--out", out.string()}),
              0)
        << err_.str();
    EXPECT_EQ(slurp(out), "n,a_n,b_n\n0,10,0\n");

    ASSERT_EQ(run({"decompose", "--input", (kScenarios / "meters/p2_4096.csv").string(),
                   "--order", "100", "--out", out.string()}),
              0);
    const auto r = rows(slurp(out));
    ASSERT_EQ(r.size(), 4u);
    const double want[4][3] = {{0, 80, 0}, {5, 0, 5}, {20, 10, 0}, {100, 0, 20}};
    for (int i = 0; i < 4; ++i) {
        for (int k = 0; k < 3; ++k) {
            EXPECT_NEAR(r[i][k], want[i][k], 1e-6);
        }
    }
}

TEST_F(Cli, DecomposeAliasingExitCode) {
    EXPECT_EQ(run({"decompose", "--input", (kScenarios / "meters/constant5.csv").string(),
                   "--order", "5", "--out", (dir_ / "x.csv").string()}),
              cli::kAliasing);
    EXPECT_NE(err_.str().find("liasing"), std::string::npos);
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run({}), cli::kParse);
    EXPECT_EQ(run({"transmogrify"}), cli::kParse);
    EXPECT_EQ(run({"decompose", "--out", (dir_ / "x.csv").string()}), cli::kParse);
    EXPECT_EQ(run({"plot-data", "--scenario", (kScenarios / "toy.scn").string(), "--curve", "toy1",
                   "--samples", "1", "--out", (dir_ / "x.csv").string()}),
              cli::kParse);
}

TEST_F(Cli, SettleTwoPlans) {
    ASSERT_EQ(run({"settle", "--scenario", (kScenarios / "two_plans.scn").string(), "--out",
                   dir_.string(), "--format", "table"}),
              0)
        << err_.str();
    EXPECT_NE(slurp(dir_ / "bill_load1@plan1.txt").find("1769.0309"), std::string::npos);
    EXPECT_NE(slurp(dir_ / "bill_load2@plan2.txt").find("2340.3090"), std::string::npos);
    EXPECT_NE(slurp(dir_ / "audit.txt").find("PASS"), std::string::npos);
}

TEST_F(Cli, SettleThreeByThree) {
    ASSERT_EQ(run({"settle", "--scenario", (kScenarios / "three_by_three.scn").string(), "--out",
                   dir_.string()}),
              0)
        << err_.str();
    for (const char* f : {"bill_load3.csv", "bill_load4.csv", "bill_load5.csv", "income_g3.csv",
                          "income_g4.csv", "income_g5.csv", "equivalent_prices.csv", "audit.txt"}) {
        EXPECT_TRUE(fs::exists(dir_ / f)) << f;
    }
    const auto text = slurp(dir_ / "bill_load4.csv");
    EXPECT_NE(text.find("load4,20,a,15,19,285"), std::string::npos) << text;
}

TEST_F(Cli, SettleImbalanceAndUnknownIds) {
    const auto path = dir_ / "bad.scn";
    {
        std::ofstream out(path);
        out << R"({"interval": [0, 1], "topology": "multi-multi",
          "plans": {"p": {"alpha": [{"f_lo": 0, "form": "constant", "c": 1}]}},
          "sources": [{"id": "g", "plan": "p", "curve": {"mean": 10}}],
          "subscribers": [{"id": "l", "curve": {"mean": 11}}]})";
    }
    EXPECT_EQ(run({"settle", "--scenario", path.string(), "--out", (dir_ / "o").string()}),
              cli::kImbalance);
    {
        std::ofstream out(path);
        out << R"({"interval": [0, 1], "topology": "multi-multi",
          "plans": {"p": {"alpha": [{"f_lo": 0, "form": "constant", "c": 1}]}},
          "sources": [{"id": "g", "plan": "nope", "curve": {"mean": 10}}],
          "subscribers": [{"id": "l", "curve": {"mean": 10}}]})";
    }
    EXPECT_EQ(run({"settle", "--scenario", path.string(), "--out", (dir_ / "o").string()}),
              cli::kParse);
}

TEST_F(Cli, PlotData) {
    const auto out = dir_ / "p1.csv";
    ASSERT_EQ(run({"plot-data", "--scenario", (kScenarios / "two_plans.scn").string(), "--curve",
                   "load1", "--samples", "1000", "--out", out.string()}),
              0)
        << err_.str();
    const auto r = rows(slurp(out));
    ASSERT_EQ(r.size(), 1000u);
    EXPECT_EQ(r.front()[0], 0.0);
    EXPECT_EQ(r.back()[0], 1.0);
    double mean = 0;
    for (const auto& row : r) {
        EXPECT_GE(row[1], 15.0 - 1e-9);
        EXPECT_LE(row[1], 85.0 + 1e-9);
        mean += row[1];
    }
    // The closed grid counts the endpoint twice; the average still lands near 50.
    EXPECT_NEAR(mean / r.size(), 50.0, 0.1);

    for (const char* id : {"toy1", "toy2", "toy3"}) {
        ASSERT_EQ(run({"plot-data", "--scenario", (kScenarios / "toy.scn").string(), "--curve", id,
                       "--samples", "2001", "--out", out.string()}),
                  0);
        double s = 0;
        const auto t = rows(slurp(out));
        for (std::size_t k = 0; k + 1 < t.size(); ++k) {
            s += t[k][1];
        }
        EXPECT_NEAR(s / (t.size() - 1), 5.0, 1e-9) << id;
    }
}

TEST_F(Cli, OutputIsDeterministic) {
    const auto scn = (kScenarios / "three_by_three.scn").string();
    ASSERT_EQ(run({"settle", "--scenario", scn, "--out", (dir_ / "a").string()}), 0);
    ASSERT_EQ(run({"settle", "--scenario", scn, "--out", (dir_ / "b").string()}), 0);
    for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
        EXPECT_EQ(slurp(entry.path()), slurp(dir_ / "b" / entry.path().filename()))
            << entry.path().filename();
    }
}

TEST_F(Cli, SpectrumReingestion) {
    // A written spectrum fed back through a scenario reproduces the same bill.
    const auto spectrum = dir_ / "load2.csv";
    ASSERT_EQ(run({"decompose", "--scenario", (kScenarios / "two_plans.scn").string(), "--curve",
                   "load2", "--out", spectrum.string()}),
              0);
    const auto path = dir_ / "re.scn";
    {
        std::ofstream out(path);
        out << R"({"interval": [0, 1], "topology": "one-source-multi",
          "plans": {"p": {"alpha": [{"f_lo": 0, "form": "constant", "c": 3}], "beta": [{"f_lo": 0, "form": "constant", "c": 7}]}},
          "sources": [{"id": "g", "plan": "p", "curve": {"spectrum": "load2.csv"}}],
          "subscribers": [{"id": "l", "curve": {"mean": 40, "terms": [{"n": 5, "sin": 5}, {"n": 20, "cos": 10}, {"n": 100, "sin": 20}]}}]})";
    }
    ASSERT_EQ(run({"settle", "--scenario", path.string(), "--out", (dir_ / "o").string()}), 0)
        << err_.str();
    EXPECT_NEAR(charge_total(slurp(dir_ / "o" / "income_g.csv")),
                charge_total(slurp(dir_ / "o" / "bill_l.csv")), 1e-9);
    EXPECT_NE(slurp(dir_ / "o" / "audit.txt").find("PASS"), std::string::npos);
}

TEST(CliBinary, RunsAsProcess) {
    const auto out = fs::temp_directory_path() / "dynprice_binary_check.csv";
    const std::string cmd = std::string("\"") + DYNPRICE_CLI_PATH + "\" decompose --scenario \"" +
                            (kScenarios / "toy.scn").string() + "\" --curve toy2 --out \"" +
                            out.string() + "\"";
    EXPECT_EQ(std::system(cmd.c_str()), 0);
    std::ifstream in(out);
    std::string header, first;
    std::getline(in, header);
    std::getline(in, first);
    EXPECT_EQ(header, "n,a_n,b_n");
    EXPECT_EQ(first, "0,10,0");
    fs::remove(out);
    EXPECT_NE(std::system((std::string("\"") + DYNPRICE_CLI_PATH + "\" settle 2>/dev/null").c_str()),
              0);
}

}  // namespace
}  // namespace dynprice
