#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <map>
#include <set>
#include <sstream>

#include "fk/cli.hpp"

using fk::cli::parse_threshold;
using fk::cli::run;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult invoke(std::initializer_list<std::string> args) {
    std::ostringstream out, err;
    int code = run(std::vector<std::string>(args), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("threshold parsing") {
    CHECK(parse_threshold("123") == 123);
    CHECK(parse_threshold("10^3") == 1000);
    CHECK(parse_threshold("2^16") == 65536);
    CHECK(parse_threshold("123.75") == 123); // floor semantics
    fk::BigNat big = parse_threshold("10^100");
    CHECK(fk::floor_log(big, 10) == 100);
    CHECK_THROWS_AS(parse_threshold(""), std::domain_error);
    CHECK_THROWS_AS(parse_threshold("abc"), std::domain_error);
    CHECK_THROWS_AS(parse_threshold("10^"), std::domain_error);
    CHECK_THROWS_AS(parse_threshold("-5"), std::domain_error);
}

TEST_CASE("count subcommand") {
    auto r = invoke({"count", "--n", "12", "--k", "2", "--l", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "4\n");

    for (const char* algo : {"oracle", "recursive", "macmahon", "separation", "elimination"}) {
        auto a = invoke({"count", "--n", "12", "--k", "2", "--l", "2", "--algorithm", algo});
        CHECK(a.code == 0);
        CHECK(a.out == "4\n");
    }

    auto d = invoke({"count", "--n", "12", "--k", "2", "--l", "1"});
    CHECK(d.out == "6\n");

    auto json_out = invoke({"count", "--n", "12", "--k", "2", "--format", "json"});
    auto j = nlohmann::json::parse(json_out.out);
    CHECK(j["value"] == "4");
    CHECK(j["n"] == 12);
}

TEST_CASE("count domain and usage errors") {
    auto bad_combo = invoke({"count", "--n", "12", "--k", "2", "--l", "3",
                             "--algorithm", "macmahon"});
    CHECK(bad_combo.code == 1);
    CHECK(bad_combo.err.find("macmahon") != std::string::npos);

    auto usage = invoke({"count", "--k", "2"});
    CHECK(usage.code == 2);

    auto unknown = invoke({"nonsense"});
    CHECK(unknown.code == 2);
}

TEST_CASE("summatory subcommand") {
    for (const char* algo : {"auto", "naive", "separation", "elimination", "hyperbola", "f2"}) {
        auto r = invoke({"summatory", "--x", "100", "--k", "2", "--l", "2",
                         "--algorithm", algo});
        CHECK(r.code == 0);
        CHECK(r.out == "283\n");
    }
    auto lit = invoke({"summatory", "--x", "10", "--k", "2", "--algorithm", "f2-literal"});
    CHECK(lit.out == "28\n");
    auto dbl = invoke({"summatory", "--x", "10^4", "--k", "4", "--algorithm", "doubling"});
    auto naive = invoke({"summatory", "--x", "10^4", "--k", "4", "--algorithm", "naive"});
    CHECK(dbl.out == naive.out);
    auto odd = invoke({"summatory", "--x", "100", "--k", "3", "--algorithm", "doubling"});
    CHECK(odd.code == 1);
}

TEST_CASE("poly subcommand emits the full report") {
    auto r = invoke({"poly", "--x", "10^100", "--l", "2", "--j", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["t"] == 332);
    CHECK(j["tau"] == 5);
    CHECK(j["value"] == "38535596289");
    CHECK(j["nodes"] == nlohmann::json({"9", "18", "36", "73", "146", "292"}));
    CHECK(j["kappa"] == nlohmann::json({"1", "16", "36", "32", "15", "1"}));
    CHECK(j["lambda"] == nlohmann::json({"1", "17", "69", "189", "424", "837"}));

    auto plain = invoke({"poly", "--x", "4096", "--l", "2", "--j", "1"});
    CHECK(plain.code == 0);
    CHECK(plain.out.find("value = ") != std::string::npos);

    // json output re-parses to the same exact values
    auto again = invoke({"poly", "--x", "10^100", "--l", "2", "--j", "3", "--format", "json"});
    CHECK(nlohmann::json::parse(again.out) == j);
}

TEST_CASE("bounds subcommand") {
    auto r = invoke({"bounds", "--j", "1", "--l", "2", "--t-min", "2", "--t-max", "10"});
    CHECK(r.code == 0);
    CHECK(r.out.find("2 t - 1") != std::string::npos);
    auto j = invoke({"bounds", "--j", "0", "--format", "json"});
    auto parsed = nlohmann::json::parse(j.out);
    CHECK(parsed["lower"] == nlohmann::json({"1"}));
    CHECK(parsed["upper"] == nlohmann::json({"1", "1"}));
}

TEST_CASE("identity subcommand") {
    auto r = invoke({"identity", "--limit", "500"});
    CHECK(r.code == 0);
    CHECK(r.out.find("hold exactly") != std::string::npos);
}

TEST_CASE("scan subcommand with csv output") {
    auto tmp = std::string("/tmp/fk_scan_test.csv");
    auto r = invoke({"scan", "--limit", "20000", "--csv", tmp, "--sample", "5000",
                     "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["limit"] == 20000);
    CHECK(j["max_abs_error"].get<double>() > 0);
    std::ifstream csv(tmp);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "x,f2,main_term,delta");
    std::remove(tmp.c_str());

    auto serial = invoke({"scan", "--limit", "20000", "--serial", "--format", "json"});
    auto js = nlohmann::json::parse(serial.out);
    CHECK(js["argmax_x"] == j["argmax_x"]);
    CHECK(js["f2_at_argmax"] == j["f2_at_argmax"]);
}

TEST_CASE("scan uses the table cache when FK_CACHE_DIR is set") {
    std::string dir = "/tmp/fk_cache_test";
    std::filesystem::remove_all(dir);
    setenv("FK_CACHE_DIR", dir.c_str(), 1);
    auto first = invoke({"scan", "--limit", "10000", "--format", "json"});
    auto second = invoke({"scan", "--limit", "10000", "--format", "json"});
    unsetenv("FK_CACHE_DIR");
    REQUIRE(first.code == 0);
    REQUIRE(second.code == 0);
    auto j1 = nlohmann::json::parse(first.out);
    auto j2 = nlohmann::json::parse(second.out);
    CHECK(j1["argmax_x"] == j2["argmax_x"]);
    CHECK(j1["kernel"] == "cached-table");
    CHECK(std::filesystem::exists(dir + "/fk_d2_10000.tbl"));
    auto plain = invoke({"scan", "--limit", "10000", "--format", "json"});
    auto j3 = nlohmann::json::parse(plain.out);
    CHECK(j3["kernel"] == "parallel");
    CHECK(j3["argmax_x"] == j1["argmax_x"]);
    std::filesystem::remove_all(dir);
}

TEST_CASE("constants subcommand") {
    auto r = invoke({"constants", "--precision", "10", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    double rho = std::stod(j["rho"].get<std::string>());
    double K = std::stod(j["K"].get<std::string>());
    CHECK(rho == doctest::Approx(1.7286).epsilon(1e-3));
    CHECK(K == doctest::Approx(0.31817).epsilon(1e-3));
    auto bad = invoke({"constants", "--precision", "99"});
    CHECK(bad.code == 1);
}

TEST_CASE("bench asserts agreement before reporting") {
    auto r = invoke({"bench", "--grid", "1000,5000", "--k", "2", "--l", "2",
                     "--format", "csv"});
    REQUIRE(r.code == 0);
    // same value column for every algorithm at fixed x
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "algorithm,x,ms,value");
    std::map<std::string, std::set<std::string>> values_by_x;
    while (std::getline(in, line)) {
        auto c1 = line.find(','), c2 = line.find(',', line.find(',') + 1);
        auto c3 = line.rfind(',');
        values_by_x[line.substr(c1 + 1, c2 - c1 - 1)].insert(line.substr(c3 + 1));
    }
    REQUIRE(values_by_x.size() == 2);
    for (const auto& [x, vals] : values_by_x) CHECK(vals.size() == 1);

    auto scan_bench = invoke({"bench", "--scan", "--limit", "50000"});
    CHECK(scan_bench.code == 0);
    CHECK(scan_bench.out.find("scan-serial") != std::string::npos);
    CHECK(scan_bench.out.find("scan-parallel") != std::string::npos);
}

TEST_CASE("selftest runs its grids") {
    auto r = invoke({"selftest", "--n-max", "60", "--k-max", "3", "--x-max", "60"});
    CHECK(r.code == 0);
    CHECK(r.out.find("selftest passed") != std::string::npos);
}

TEST_CASE("help exits zero") {
    auto r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("count") != std::string::npos);
}
