// Copyright (c) 2026 The txpack developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <doctest.h>

#include "cli.h"
#include "test_support.h"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = txpack::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> base(const std::string& cmd, const std::string& fixture = "table2.json")
{
    return {cmd, "--mempool", txpack::test::fixture(fixture), "--k", "3", "--lambda", "1"};
}

std::vector<std::string> with(std::vector<std::string> args, std::initializer_list<std::string> more)
{
    args.insert(args.end(), more);
    return args;
}

} // namespace

TEST_CASE("cli equilibrium")
{
    const Result r = run(base("equilibrium"));
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["xhat"].get<double>() == doctest::Approx(1.0 / 3.0).epsilon(1e-11));
    CHECK(doc["w"].get<double>() == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-11));
    REQUIRE(doc["marginals"].size() == 7);
    CHECK(doc["marginals"][1]["p"].get<double>() == 1.0);
    CHECK(doc["marginals"][6]["p"].get<double>() == 0.0);
}

TEST_CASE("cli sample")
{
    Result r = run(with(base("sample"), {"--r", "0.37"}));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["txids"] == json::array({2, 3, 5}));

    r = run(with(base("sample"), {"--seed", "4"}));
    REQUIRE(r.code == 0);
    const Result again = run(with(base("sample"), {"--seed", "4"}));
    CHECK(r.out == again.out);
    CHECK(json::parse(r.out)["txids"].size() == 3);

    r = run(with(base("sample", "variable.json"), {"--mode", "variable", "--seed", "2"}));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["used_capacity"].get<double>() <= 3.0);
}

TEST_CASE("cli basefee and verify")
{
    Result r = run(base("basefee"));
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["v_low"].get<double>() == doctest::Approx(std::exp(-1.0 / 3.0)).epsilon(1e-11));
    CHECK(doc["v_high"].get<double>() == doctest::Approx(std::exp(2.0 / 3.0)).epsilon(1e-11));

    r = run(with(base("basefee"), {"--fee-mode", "paper"}));
    REQUIRE(r.code == 0);
    CHECK(json::parse(r.out)["v_low"].get<double>() == doctest::Approx(std::exp(-2.0 / 3.0)).epsilon(1e-11));

    r = run(base("verify"));
    REQUIRE(r.code == 0);
    doc = json::parse(r.out);
    CHECK(doc["passes"].get<bool>());
    CHECK(doc["brute_force"]["passes"].get<bool>());

    const std::string profile = "cli_test_greedy_profile.json";
    {
        std::ofstream f(profile);
        f << R"({"marginals":[{"id":1,"p":1},{"id":2,"p":1},{"id":3,"p":0},{"id":4,"p":1},)"
          << R"({"id":5,"p":0},{"id":6,"p":0},{"id":7,"p":0}]})";
    }
    r = run(with(base("verify"), {"--profile", profile}));
    std::remove(profile.c_str());
    REQUIRE(r.code == 0);
    doc = json::parse(r.out);
    CHECK_FALSE(doc["passes"].get<bool>());
    CHECK(doc["witness"]["gain"].get<double>() > 0.0);
}

TEST_CASE("cli simulate")
{
    const Result r = run({"simulate", "--config", txpack::test::fixture("experiment.json"), "--trials", "500"});
    REQUIRE(r.code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["schema_version"] == 1);
    CHECK(doc["reports"].size() == 3);
    CHECK(doc["config"]["trials"] == 500);

    const Result a = run(with(base("simulate"), {"--trials", "300", "--seed", "3", "--jobs", "1"}));
    const Result b = run(with(base("simulate"), {"--trials", "300", "--seed", "3", "--jobs", "3"}));
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("cli exit codes")
{
    SUBCASE("validation")
    {
        const Result r = run(base("equilibrium", "empty.json"));
        CHECK(r.code == txpack::cli::exit_validation);
        CHECK(r.err.find("empty mempool") != std::string::npos);
        CHECK(run(base("equilibrium", "negative_price.json")).code == txpack::cli::exit_validation);
        CHECK(run(base("equilibrium", "no_such_file.json")).code == txpack::cli::exit_validation);
        CHECK(run({"equilibrium", "--mempool", txpack::test::fixture("table2.json"), "--k", "3", "--lambda", "0"}).code ==
              txpack::cli::exit_validation);
        CHECK(run({"simulate", "--config", txpack::test::fixture("experiment.json"), "--trials", "0"}).code ==
              txpack::cli::exit_validation);
    }
    SUBCASE("usage")
    {
        CHECK(run({}).code == txpack::cli::exit_usage);
        CHECK(run({"frobnicate"}).code == txpack::cli::exit_usage);
        CHECK(run({"equilibrium", "--k", "3"}).code == txpack::cli::exit_usage);
        CHECK(run(with(base("equilibrium"), {"--mode", "sideways"})).code == txpack::cli::exit_usage);
        CHECK(run(with(base("equilibrium"), {"--kprime", "2"})).code == txpack::cli::exit_usage);
    }
    SUBCASE("help")
    {
        const Result r = run({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("equilibrium") != std::string::npos);
    }
}
