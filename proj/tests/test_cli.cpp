#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "schema_check.hpp"

#ifndef PGIM_CLI_PATH
#error "PGIM_CLI_PATH must name the pgim executable"
#endif
#ifndef PGIM_SCHEMA_PATH
#error "PGIM_SCHEMA_PATH must name the summary schema"
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Cli : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
        dir = fs::temp_directory_path() / ("pgim_cli_" + std::string(info->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    /// Runs the CLI with stdout and stderr captured to files; returns the exit status.
    int run(const std::string& args) {
        const std::string cmd = std::string(PGIM_CLI_PATH) + " " + args + " >" + (dir / "stdout").string() + " 2>" +
                                (dir / "stderr").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string path(const std::string& name) const { return (dir / name).string(); }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    std::string out() const { return slurp(path("stdout")); }
    std::string err() const { return slurp(path("stderr")); }

    static std::vector<std::string> lines(const std::string& text) {
        std::vector<std::string> v;
        std::istringstream in(text);
        for (std::string l; std::getline(in, l);) v.push_back(l);
        return v;
    }

    static std::vector<double> trace_errors(const std::string& text) {
        std::vector<double> e;
        const auto ls = lines(text);
        for (std::size_t i = 1; i < ls.size(); ++i) e.push_back(std::stod(ls[i].substr(ls[i].find(',') + 1)));
        return e;
    }

    static json schema() { return json::parse(slurp(PGIM_SCHEMA_PATH)); }
};

}  // namespace

TEST_F(Cli, SolveDuckPiaWritesTrace) {
    ASSERT_EQ(run("solve --example duck --method pia --tol 1e-6 --out " + path("trace.csv")), 0) << err();
    const std::string text = slurp(path("trace.csv"));
    const auto ls = lines(text);
    ASSERT_GE(ls.size(), 3u);
    EXPECT_EQ(ls[0], "k,epsilon");
    EXPECT_EQ(ls[1].substr(0, 2), "1,");
    const auto e = trace_errors(text);
    EXPECT_LE(e.back(), 1e-6);
    std::size_t decreasing = 0;
    for (std::size_t i = 1; i < e.size(); ++i) decreasing += e[i] < e[i - 1];
    EXPECT_GE(decreasing, (e.size() - 1) * 9 / 10);
}

TEST_F(Cli, OmegaOutOfRangeIsUsageError) {
    EXPECT_EQ(run("solve --example duck --method sor --omega 2.5"), 1);
    EXPECT_NE(err().find("OmegaOutOfRange"), std::string::npos) << err();
}

TEST_F(Cli, NotConvergedExitsTwoWithFullTrace) {
    EXPECT_EQ(run("solve --example duck --method pgs --tol 1e-30 --max-iter 5 --out " + path("t.csv")), 2);
    const auto ls = lines(slurp(path("t.csv")));
    ASSERT_EQ(ls.size(), 6u);
    EXPECT_EQ(ls[5].substr(0, 2), "5,");
    EXPECT_NE(err().find("not converged"), std::string::npos);
}

TEST_F(Cli, PreconditionFlagEqualsPrefixedToken) {
    ASSERT_EQ(run("solve --example duck --method gs --precondition --out " + path("a.csv")), 0);
    ASSERT_EQ(run("solve --example duck --method pgs --out " + path("b.csv")), 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, SummaryValidatesAgainstSchema) {
    const json s = schema();
    const std::vector<std::string> cases{
        "solve --example duck --method pia",
        "solve --example duck --method psor",
        "solve --example duck --method wpia --omega 0.9 --param uniform",
        "solve --example duck --method jacobi --tol 1e-30 --max-iter 3",
        "solve --example rose3d --method pgs --format json",
    };
    for (const auto& c : cases) {
        const int code = run(c);
        EXPECT_TRUE(code == 0 || code == 2) << c;
        const json j = json::parse(out());
        const auto errors = schema_check::validate(j, s);
        EXPECT_TRUE(errors.empty()) << c << ": " << (errors.empty() ? "" : errors.front());
    }
    run("solve --example duck --method psor");
    const json j = json::parse(out());
    EXPECT_TRUE(j["omega_used"].is_number());
    EXPECT_EQ(j["method"], "PSOR-PIA");
}

TEST_F(Cli, SchemaRejectsBrokenSummary) {
    ASSERT_EQ(run("solve --example duck --method pia"), 0);
    json j = json::parse(out());
    j["version"] = "v2";
    j.erase("k");
    j["extra"] = 1;
    EXPECT_EQ(schema_check::validate(j, schema()).size(), 3u);
}

TEST_F(Cli, MultipleOutputsByExtension) {
    ASSERT_EQ(run("solve --example duck --method pgs --out " + path("t.csv") + " --out " + path("s.json") +
                  " --out " + path("c.svg") + " --curve-csv " + path("curve.csv") + " --samples 50"),
              0)
        << err();
    EXPECT_EQ(lines(slurp(path("t.csv")))[0], "k,epsilon");
    EXPECT_EQ(json::parse(slurp(path("s.json")))["converged"], true);
    EXPECT_EQ(slurp(path("c.svg")).rfind("<svg", 0), 0u);
    EXPECT_EQ(lines(slurp(path("curve.csv"))).size(), 50u);
    EXPECT_EQ(run("solve --example duck --out " + path("noext")), 1);
}

TEST_F(Cli, InputFileErrorsCarryLineNumbers) {
    {
        std::ofstream f(path("bad.csv"));
        f << "0,0\n1,1\n2,oops\n3,3\n";
    }
    EXPECT_EQ(run("solve --input " + path("bad.csv")), 1);
    EXPECT_NE(err().find("line 3"), std::string::npos) << err();
    EXPECT_EQ(run("solve --input " + path("missing.csv")), 1);
    EXPECT_EQ(run("solve --example duck --input " + path("bad.csv")), 1);
}

TEST_F(Cli, GenRoundTripsThroughSolveInput) {
    ASSERT_EQ(run("gen --example duck --out " + path("duck.csv")), 0);
    EXPECT_EQ(lines(slurp(path("duck.csv"))).size(), 41u);
    ASSERT_EQ(run("solve --input " + path("duck.csv") + " --method gs --out " + path("a.csv")), 0);
    ASSERT_EQ(run("solve --example duck --method gs --out " + path("b.csv")), 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, SeedFreeIsANoOp) {
    ASSERT_EQ(run("solve --example duck --method sor --out " + path("a.csv")), 0);
    ASSERT_EQ(run("--seed-free solve --example duck --method sor --seed-free --out " + path("b.csv")), 0);
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, UsageErrors) {
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run("solve --example duck --method cg"), 1);
    EXPECT_EQ(run("solve --example duck --omega fast"), 1);
    EXPECT_EQ(run("solve --example duck --tol -1"), 1);
    EXPECT_EQ(run("gen --example duck --n 12"), 1);
    EXPECT_EQ(run("--help"), 0);
}

TEST_F(Cli, SpectraTableWithReferences) {
    ASSERT_EQ(run("spectra --example duck --example spatial_circular --out " + path("s.csv")), 0) << err();
    const auto ls = lines(slurp(path("s.csv")));
    ASSERT_EQ(ls.size(), 11u);
    EXPECT_EQ(ls[0], "method,duck,spatial_circular,ref_duck,ref_spatial_circular,absdev_duck,absdev_spatial_circular");
    std::vector<std::vector<double>> rho;
    for (std::size_t i = 1; i < ls.size(); ++i) {
        std::istringstream row(ls[i]);
        std::string cell;
        std::getline(row, cell, ',');
        std::vector<double> v;
        while (std::getline(row, cell, ',')) v.push_back(std::stod(cell));
        rho.push_back(v);
    }
    EXPECT_NEAR(rho[0][1], 0.6666, 0.01);  // PIA, spatial circular
    for (std::size_t m = 0; m < 10; m += 2) {
        for (std::size_t c = 0; c < 2; ++c) EXPECT_LT(rho[m + 1][c], rho[m][c]);
    }
    ASSERT_EQ(run("spectra --example duck --param uniform --method pia"), 0);
    EXPECT_EQ(lines(out())[0], "method,duck");
}

TEST_F(Cli, BenchGridIsCompleteAndNested) {
    ASSERT_EQ(run("bench --example spherical_cardioid --n 300 --tol 1e-10 --tol 1e-12 --method pia --method ppia "
                  "--method gs --method pgs --repeats 1 --format json --out " +
                  path("b.json")),
              0)
        << err();
    const json cells = json::parse(slurp(path("b.json")))["cells"];
    ASSERT_EQ(cells.size(), 8u);
    auto k = [&](const std::string& m, double tol) {
        for (const auto& c : cells) {
            if (c["method"] == m && c["tol"] == tol) return c["k"].get<int>();
        }
        return -1;
    };
    for (const std::string m : {"PIA", "PPIA", "GS-PIA", "PGS-PIA"}) EXPECT_GE(k(m, 1e-12), k(m, 1e-10)) << m;
    EXPECT_LT(k("PPIA", 1e-10), k("PIA", 1e-10));
    EXPECT_LE(k("PGS-PIA", 1e-10), k("GS-PIA", 1e-10));
    EXPECT_LE(k("PGS-PIA", 1e-12), k("GS-PIA", 1e-12));

    ASSERT_EQ(run("bench --example duck --method sor --tol 1e-8 --repeats 1"), 0) << err();
    const auto ls = lines(out());
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "example,n,method,tol,k,converged,sweep_time_s,omega_time_s,omega,ref_k");
}
