#include "doctest.h"
#include "kop/cli.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = kop::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
    auto path = std::filesystem::temp_directory_path() / ("kop_test_" + name);
    std::ofstream(path) << body;
    return path.string();
}

}  // namespace

TEST_CASE("ring adams") {
    Result r = run({"ring", "adams", "--p", "3", "--q", "2", "--j", "5", "--trunc", "6", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["coeffs"][0] == "1");
    CHECK(j["coeffs"][1] == "4");
    CHECK(j["coeffs"].size() == 6);
    CHECK(run({"ring", "adams", "--p", "3", "--j", "3"}).code == 2);
}

TEST_CASE("ring constants csv") {
    Result r = run({"ring", "constants", "--p", "3", "--trunc", "4", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("j,n,k,value\n", 0) == 0);
}

TEST_CASE("verify subcommands") {
    CHECK(run({"verify", "thetapower", "--p", "3", "--q", "2", "--k", "1"}).code == 0);
    CHECK(run({"verify", "ccong", "--p", "5"}).code == 0);
    CHECK(run({"verify", "phiquot", "--p", "3", "--n-max", "12"}).code == 0);
    CHECK(run({"verify", "symmetry", "--p", "3"}).code == 0);
    CHECK(run({"verify", "abcongs", "--p", "3", "--seed", "9"}).code == 0);
    // The literal index in the split ring is a reported failure, not an error.
    CHECK(run({"verify", "thetapower", "--p", "3", "--variant", "split", "--k", "1", "--index", "6"}).code == 1);
}

TEST_CASE("usage and validation errors") {
    CHECK(run({"module", "check", "/nonexistent/missing.json"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"ring", "adams", "--p", "4", "--j", "5"}).code == 2);
    CHECK(run({"ring", "adams", "--p", "3", "--q", "4", "--j", "5"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("module files") {
    const std::string good = write_temp(
        "good.json",
        R"({"p": 3, "q": 2, "variant": "nonsplit", "torsion_exponents": [2,1], "free_rank": 1,
            "action": [["1","0","0"],["0","1","0"],["0","0","2"]]})");
    const std::string bad = write_temp(
        "bad.json", R"({"p": 3, "torsion_exponents": [1], "free_rank": 1, "action": [["1","0"],["1","2"]]})");
    const std::string jordan =
        write_temp("jordan.json", R"({"p": 3, "torsion_exponents": [], "free_rank": 2, "action": [["1","1"],["0","1"]]})");
    CHECK(run({"module", "check", good}).code == 0);
    Result b = run({"module", "check", bad});
    CHECK(b.code == 1);
    CHECK(run({"module", "bousfield", good}).code == 0);
    CHECK(run({"module", "bousfield", jordan}).code == 1);
    Result act = run({"module", "act", good, "--x", "1,1,1", "--j", "5"});
    REQUIRE(act.code == 0);
    CHECK(run({"module", "coaction", good, "--x", "1,0,1"}).code == 0);
    CHECK(run({"module", "hom", good, good}).code == 0);
    CHECK(run({"sequence", "verify", good}).code == 0);
    CHECK(run({"sequence", "alpha", good, "--x", "1,1,1"}).code == 0);
}

TEST_CASE("corpus is deterministic and records the seed") {
    Result a = run({"corpus", "generate", "--p", "3", "--seed", "17", "--size", "5"});
    Result b = run({"corpus", "generate", "--p", "3", "--seed", "17", "--size", "5"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out)["config"]["seed"] == 17);
}

TEST_CASE("config file and environment") {
    const std::string cfg = write_temp("cfg.json", R"({"p": 5, "truncation": 5})");
    Result r = run({"ring", "adams", "--config", cfg, "--j", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["config"]["p"] == 5);
    CHECK(j["coeffs"].size() == 5);
    Result o = run({"ring", "adams", "--config", cfg, "--p", "7", "--j", "2"});
    CHECK(nlohmann::json::parse(o.out)["config"]["p"] == 7);
    setenv("KOP_PRIME", "5", 1);
    Result e = run({"ring", "adams", "--j", "2"});
    unsetenv("KOP_PRIME");
    REQUIRE(e.code == 0);
    CHECK(nlohmann::json::parse(e.out)["config"]["p"] == 5);
}
