#include "tvc/cli/commands.hpp"
#include "tvc/cli/config.hpp"
#include "tvc/cli/csv.hpp"
#include "tvc/core/errors.hpp"
#include "tvc/dgp/scenario.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace tvc;
using namespace tvc::cli;
namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tvcspec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static std::vector<std::string> lines(const std::string& text) {
        std::vector<std::string> out;
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) out.push_back(line);
        return out;
    }

    std::string scenario_file(const std::string& letter, int n, int seed) {
        const std::string p = path("data_" + letter + ".csv");
        const RunResult r = run({"simulate", "--scenario", letter, "--n", std::to_string(n), "--seed",
                                 std::to_string(seed), "--out", p});
        EXPECT_EQ(r.code, 0) << r.err;
        return p;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SimulateWritesRowsAndColumns) {
    const std::string p = scenario_file("D", 200, 3);
    const auto rows = lines(slurp(p));
    ASSERT_EQ(rows.size(), 201u);
    EXPECT_EQ(rows[0], "t,y,x1,x2");
    for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(split_csv_line(rows[i]).size(), 4u);
    const CsvSample back = read_sample_csv_file(p);
    const TimeSeriesSample direct = dgp::simulate_scenario(dgp::Scenario::D, 200, 3);
    EXPECT_EQ(back.sample.y(), direct.y());
    EXPECT_EQ(back.sample.x(), direct.x());
}

TEST_F(CliTest, NanRowIsRejectedWithLineNumber) {
    const std::string p = path("bad.csv");
    {
        std::ofstream f(p);
        f << "y,x1\n1.0,1\n2.0,1\nnan,1\n";
        for (int i = 0; i < 40; ++i) f << "0.5,1\n";
    }
    const RunResult r = run({"test", p, "--method", "asym", "--test", "single", "--bandwidth", "0.3"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find(":4:"), std::string::npos) << r.err;
}

TEST_F(CliTest, CsvReaderValidation) {
    std::istringstream wrong_count("t,y,x1\n0.5,1,1\n1.0,2\n");
    try {
        read_sample_csv(wrong_count, "mem");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find("mem:3"), std::string::npos);
    }
    std::istringstream no_time("y,x1,x2\n1,1,2\n2,1,3\n");
    const CsvSample s = read_sample_csv(no_time);
    EXPECT_FALSE(s.had_time_column);
    EXPECT_EQ(s.sample.p(), 2u);
    EXPECT_EQ(split_csv_line(" a , b,c "), (std::vector<std::string>{"a", "b", "c"}));
}

TEST_F(CliTest, WildTestReportIsWellFormedAndDeterministic) {
    const std::string data = scenario_file("A", 200, 1);
    const std::vector<std::string> base = {"test", "--null", "zero", "--method", "wild", "--grid", "auto",
                                           "--B", "199", "--seed", "1", data};
    auto args1 = base;
    args1.insert(args1.end(), {"--out", path("r1.json")});
    auto args2 = base;
    args2.insert(args2.end(), {"--out", path("r2.json")});
    const RunResult a = run(args1);
    const RunResult b = run(args2);
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    const std::string j1 = slurp(path("r1.json"));
    EXPECT_EQ(j1, slurp(path("r2.json")));
    const auto report = nlohmann::json::parse(j1);
    const double p = report.at("p_value").get<double>();
    EXPECT_GE(p, 0.0);
    EXPECT_LE(p, 1.0);
    EXPECT_EQ(report.at("method"), "WILD");
    EXPECT_EQ(report.at("bandwidths").size(), 3u);
    EXPECT_EQ(report.at("statistic").at("ledger").size(), 3u);
    EXPECT_EQ(report.at("n"), 200);
}

TEST_F(CliTest, ComponentAndAsymVariantsRun) {
    const std::string data = scenario_file("B", 200, 4);
    EXPECT_EQ(run({"test", data, "--null", "component:2=0", "--B", "99"}).code, 0);
    EXPECT_EQ(run({"test", data, "--null", "constant", "--method", "asym"}).code, 0);
    EXPECT_EQ(run({"test", data, "--method", "iid", "--B", "99", "--test", "single", "--bandwidth", "0.25"}).code, 0);
    EXPECT_EQ(run({"test", data, "--method", "bogus"}).code, 2);
    EXPECT_EQ(run({"test", data, "--B", "10"}).code, 2);
}

TEST_F(CliTest, SingularDesignExitsThree) {
    const std::string data = scenario_file("A", 100, 2);
    const RunResult r = run({"test", data, "--method", "asym", "--test", "single", "--bandwidth", "0.005"});
    EXPECT_EQ(r.code, 3) << r.err;
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
    const std::string cfg = path("sim.cfg");
    {
        std::ofstream f(cfg);
        f << "# simulation defaults\nscenario = C\nn = 60   # rows\nseed = 8\n";
    }
    const std::string out1 = path("c1.csv");
    ASSERT_EQ(run({"simulate", "--config", cfg, "--out", out1}).code, 0);
    EXPECT_EQ(lines(slurp(out1)).size(), 61u);
    const std::string out2 = path("c2.csv");
    ASSERT_EQ(run({"simulate", "--config", cfg, "--n", "30", "--out", out2}).code, 0);
    EXPECT_EQ(lines(slurp(out2)).size(), 31u);

    std::istringstream text("a = 1\n\n# c\nb=x y\n");
    EXPECT_EQ(config_to_args(text), (std::vector<std::string>{"--a=1", "--b=x y"}));
    std::istringstream bad("a = 1\nnot a pair\n");
    try {
        config_to_args(bad, "cfg");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Parse);
        EXPECT_NE(std::string(e.what()).find("cfg:2"), std::string::npos);
    }
}

TEST_F(CliTest, HelpDocumentsEveryFlag) {
    const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
        {"simulate", {"--scenario", "--n", "--seed", "--out", "--config"}},
        {"fit", {"--kernel", "--bandwidth", "--out", "--config"}},
        {"test", {"--null", "--method", "--test", "--grid", "--bandwidth", "--gamma", "--B", "--seed", "--alpha",
                  "--kernel", "--lrcov-m", "--lrcov-tau", "--workers", "--out", "--draws-out", "--lrcov-out",
                  "--config"}},
        {"table1", {"--n", "--scenarios", "--methods", "--tests", "--bandwidths", "--replicates", "--B", "--alpha",
                    "--seed", "--workers", "--kernel", "--out", "--csv-out", "--config"}},
        {"power-curve", {"--kernel", "--points", "--out", "--config"}},
    };
    for (const auto& [sub, flags] : cases) {
        const RunResult r = run({sub, "--help"});
        EXPECT_EQ(r.code, 0) << sub;
        for (const auto& flag : flags) EXPECT_NE(r.out.find(flag), std::string::npos) << sub << " " << flag;
    }
}

TEST_F(CliTest, UnknownFlagsAreErrors) {
    EXPECT_EQ(run({"simulate", "--bogus", "1"}).code, 2);
    EXPECT_EQ(run({"power-curve", "--kernel", "uniform", "--pointz", "3"}).code, 2);
    EXPECT_EQ(run({"nosuchcommand"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, PowerCurveRatiosExceedOne) {
    const std::string p = path("fig1.csv");
    ASSERT_EQ(run({"power-curve", "--kernel", "uniform", "--points", "50", "--out", p}).code, 0);
    const auto rows = lines(slurp(p));
    ASSERT_EQ(rows.size(), 51u);
    EXPECT_EQ(rows[0], "c_min_tilde,c_max_tilde,ratio");
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto f = split_csv_line(rows[i]);
        ASSERT_EQ(f.size(), 3u);
        EXPECT_GT(std::stod(f[2]), 1.0) << rows[i];
    }
}

TEST_F(CliTest, FitWritesCoefficients) {
    const std::string data = scenario_file("A", 100, 6);
    const std::string p = path("fit.csv");
    ASSERT_EQ(run({"fit", data, "--bandwidth", "0.3", "--out", p}).code, 0);
    const auto rows = lines(slurp(p));
    ASSERT_EQ(rows.size(), 101u);
    EXPECT_EQ(split_csv_line(rows[1]).size(), 4u);
    EXPECT_EQ(run({"fit", data, "--bandwidth", "auto", "--out", p}).code, 0);
}

TEST_F(CliTest, Table1SmokeRun) {
    const std::string csv = path("t1.csv");
    const RunResult r = run({"table1", "--n", "100", "--replicates", "10", "--B", "99", "--seed", "9",
                             "--bandwidths", "0.25", "--csv-out", csv});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("WILD"), std::string::npos);
    EXPECT_NE(r.out.find("n=100 (a)"), std::string::npos);
    // 2 kinds x 3 methods x 4 scenarios.
    EXPECT_EQ(lines(slurp(csv)).size(), 25u);
    const RunResult again = run({"table1", "--n", "100", "--replicates", "10", "--B", "99", "--seed", "9",
                                 "--bandwidths", "0.25", "--csv-out", path("t2.csv"), "--workers", "3"});
    ASSERT_EQ(again.code, 0);
    EXPECT_EQ(slurp(csv), slurp(path("t2.csv")));
}
