#include "cli.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args)
{
    args.insert(args.begin(), "igbm");
    std::vector<char*> argv;
    for (auto& a : args) {
        argv.push_back(a.data());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = igbm::cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, RateJson)
{
    const Outcome o = invoke({"rate", "--b", "0.5", "--zeta", "0"});
    ASSERT_EQ(o.code, 0) << o.err;
    const auto j = nlohmann::json::parse(o.out);
    EXPECT_EQ(j["branch"], "zero_drift");
    EXPECT_NEAR(j["J_B"].get<double>(), 0.5 * j["R"].get<double>(), 1e-15);
}

TEST(Cli, BondMethods)
{
    const Outcome exact = invoke({"bond", "--r0", "0.1", "--sigma", "0.3", "--T", "5", "--method", "exact"});
    ASSERT_EQ(exact.code, 0) << exact.err;
    EXPECT_NEAR(nlohmann::json::parse(exact.out)["price"].get<double>(), 0.618183, 5e-7);

    const Outcome asym = invoke({"bond", "--r0", "0.06", "--sigma", "0.3", "--a", "0.09", "--T", "4"});
    ASSERT_EQ(asym.code, 0) << asym.err;
    EXPECT_EQ(nlohmann::json::parse(asym.out)["method"], "asymptotic");
}

TEST(Cli, ExactRequiresZeroDrift)
{
    const Outcome o = invoke({"bond", "--r0", "0.1", "--sigma", "0.3", "--a", "0.1", "--T", "5", "--method", "exact"});
    EXPECT_EQ(o.code, 2);
    EXPECT_FALSE(o.err.empty());
}

TEST(Cli, ArgumentErrors)
{
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"rate", "--b", "abc", "--zeta", "0"}).code, 2);
    EXPECT_EQ(invoke({"rate", "--b", "-1", "--zeta", "0"}).code, 2);
    EXPECT_EQ(invoke({"frobnicate"}).code, 2);
    EXPECT_EQ(invoke({"rate", "--b", "1", "--zeta", "-3"}).code, 2);
}

TEST(Cli, Help)
{
    const Outcome o = invoke({"--help"});
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("reproduce"), std::string::npos);
}

TEST(Cli, AsianApprox)
{
    const Outcome o = invoke({"asian", "--s0", "100", "--k", "100", "--r", "0", "--sigma", "0.2", "--T", "1"});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_NEAR(nlohmann::json::parse(o.out)["price"].get<double>(), 4.6040307, 1e-6);
}

TEST(Cli, McSeedIsReproducible)
{
    const std::vector<std::string> args{"mc", "--theta", "0.1", "--sigma", "0.3", "--T", "1",
                                        "--paths", "2000", "--steps", "16", "--seed", "42"};
    const Outcome a = invoke(args);
    const Outcome b = invoke(args);
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(nlohmann::json::parse(a.out)["seed"].get<std::uint64_t>(), 42u);
}

TEST(Cli, ReproduceTable1Csv)
{
    const Outcome o = invoke({"reproduce", "table1", "--format", "csv"});
    ASSERT_EQ(o.code, 0) << o.err;
    std::istringstream in(o.out);
    std::string line;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 16);
    EXPECT_NE(o.out.find("0.904853"), std::string::npos);
}

TEST(Cli, OutFile)
{
    const std::string path = testing::TempDir() + "igbm_table3.csv";
    const Outcome o = invoke({"reproduce", "table3", "--out", path});
    ASSERT_EQ(o.code, 0) << o.err;
    EXPECT_TRUE(o.out.empty());
    std::ifstream f(path);
    std::string header;
    std::getline(f, header);
    EXPECT_FALSE(header.empty());
    std::remove(path.c_str());
}
