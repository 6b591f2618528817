#include <doctest.h>

#include "permld/cli.hpp"
#include "permld/permutation.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using permld::runCli;
using Json = nlohmann::json;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    const int code = runCli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::vector<Json> jsonLines(const std::string& text) {
    std::vector<Json> lines;
    std::istringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (!line.empty()) lines.push_back(Json::parse(line));
    }
    return lines;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("sample emits valid deterministic draws") {
    const CliResult r = run({"sample", "--law", "ewens:2", "--n", "6", "--count", "5",
                             "--seed", "42"});
    CHECK(r.code == 0);
    const auto lines = jsonLines(r.out);
    REQUIRE(lines.size() == 5);
    for (const Json& j : lines) {
        const auto word = j.get<std::vector<int>>();
        CHECK_NOTHROW(permld::Permutation{word});
        CHECK(word.size() == 6);
    }
    const CliResult again = run({"sample", "--law", "ewens:2", "--n", "6", "--count",
                                 "5", "--seed", "42"});
    CHECK(again.out == r.out);
    const CliResult moved = run({"sample", "--law", "ewens:2", "--n", "6", "--count",
                                 "5", "--seed", "42", "--stream", "3"});
    CHECK(moved.out != r.out);
}

TEST_CASE("stat reads words from stdin") {
    const CliResult r = run({"stat", "--stat", "lis"}, "[5,3,2,4,1]\n[3,1,4,2,5]\n");
    CHECK(r.code == 0);
    CHECK(r.out == "2\n3\n");

    const CliResult maj = run({"stat", "--stat", "maj"}, "[5,3,2,4,1]\n");
    CHECK(jsonLines(maj.out).front().get<double>() == 7.0);

    const CliResult rows = run({"stat", "--stat", "rsk-rows:2"}, "[5,3,2,4,1]\n");
    CHECK(rows.out == "[2,3]\n");

    const CliResult bad = run({"stat", "--stat", "lis"}, "[1,1]\n");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("error:") != std::string::npos);

    const CliResult badJson = run({"stat", "--stat", "lis"}, "not json\n");
    CHECK(badJson.code == 2);
    CHECK(badJson.err.find("line 1") != std::string::npos);

    const CliResult badStat = run({"stat", "--stat", "nope"}, "[1]\n");
    CHECK(badStat.code == 2);
}

TEST_CASE("rate evaluates the closed forms") {
    const CliResult half = run({"rate", "--fn", "lis-half", "--x", "3"});
    CHECK(half.code == 0);
    const Json j = jsonLines(half.out).front();
    CHECK(j["fn"] == "lis-half");
    CHECK(std::abs(j["value"].get<double>() - 5.774541900715241) < 1e-9);

    const CliResult inside = run({"rate", "--fn", "lis-half", "--x", "1.5"});
    CHECK(jsonLines(inside.out).front()["value"] == "inf");

    const CliResult bennett =
        run({"rate", "--fn", "bennett", "--v", "1", "--t", "1"});
    CHECK(std::abs(jsonLines(bennett.out).front()["value"].get<double>() +
                   0.3862943611198906) < 1e-9);

    const CliResult ci = run({"rate", "--fn", "ci-bound", "--theta", "0", "--n", "50",
                              "--alpha", "0.5", "--epsilon", "1"});
    CHECK(jsonLines(ci.out).front()["value"] == "-inf");

    const CliResult unknown = run({"rate", "--fn", "nope", "--x", "1"});
    CHECK(unknown.code == 2);
}

TEST_CASE("tail runs a small grid and optionally writes csv") {
    const std::string csvPath = "cli_tail_test.csv";
    const CliResult r =
        run({"tail", "--law", "uniform", "--stat", "lis", "--n-grid", "6,8",
             "--samples", "2000", "--x", "1.8", "--scale-exp", "0.5", "--direction",
             "ge", "--seed", "11", "--threads", "1", "--csv", csvPath});
    CHECK(r.code == 0);
    const auto lines = jsonLines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0]["n"] == 6);
    CHECK(lines[1]["n"] == 8);
    CHECK(lines[0]["total"] == 2000);
    CHECK(lines[0]["pHat"].is_number());

    std::ifstream csv(csvPath);
    REQUIRE(csv.good());
    std::string header;
    std::getline(csv, header);
    CHECK(header ==
          "n,threshold,hits,total,pHat,ciLow,ciHigh,empiricalRate,theory,gap");
    int dataLines = 0;
    std::string line;
    while (std::getline(csv, line)) dataLines += !line.empty();
    CHECK(dataLines == 2);
    csv.close();
    std::remove(csvPath.c_str());

    const CliResult annotated =
        run({"tail", "--law", "cyclic", "--stat", "lis", "--n-grid", "9", "--samples",
             "2000", "--x", "2.5", "--scale-exp", "0.5", "--speed-exp", "0.5",
             "--direction", "ge", "--rate-fn", "lis-half", "--seed", "2"});
    CHECK(annotated.code == 0);
    const Json row = jsonLines(annotated.out).front();
    CHECK(row.contains("theory"));
    CHECK(row["estimate"]["n"] == 9);

    const CliResult incompatible =
        run({"tail", "--law", "uniform", "--stat", "descents", "--n-grid", "9",
             "--samples", "100", "--x", "2.5", "--rate-fn", "lis-half"});
    CHECK(incompatible.code == 2);
}

TEST_CASE("joint rows and diagnose emit one json row per request") {
    const CliResult joint = run({"joint-rows", "--law", "uniform", "--xs", "1.5,1.2",
                                 "--n", "16", "--samples", "1000", "--seed", "5",
                                 "--threads", "1"});
    CHECK(joint.code == 0);
    const Json j = jsonLines(joint.out).front();
    CHECK(j["n"] == 16);
    CHECK(j["total"] == 1000);

    const CliResult diag =
        run({"diagnose", "--law", "ewens:2", "--alpha", "1", "--beta", "0.5",
             "--epsilon", "0.4", "--n-grid", "16,24", "--samples", "2000", "--seed",
             "5", "--threads", "1"});
    CHECK(diag.code == 0);
    const auto rows = jsonLines(diag.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0]["law"] == "ewens:2");
    CHECK(rows[0]["alpha"] == 1.0);
    CHECK(rows[0].contains("ewensLogBound"));
}

TEST_CASE("exact distributions with a tail on request") {
    const CliResult r = run({"exact", "--law", "uniform", "--stat", "lis", "--n", "4",
                             "--threshold", "2", "--direction", "le", "--threads", "1"});
    CHECK(r.code == 0);
    const Json j = jsonLines(r.out).front();
    CHECK(j["n"] == 4);
    CHECK(j["statistic"] == "lis");
    // lis <= 2 on S_4 means 123-avoiding: Catalan(4)/4! = 14/24
    CHECK(std::abs(j["tail"].get<double>() - 14.0 / 24.0) < 1e-12);

    const CliResult plain =
        run({"exact", "--law", "cyclic", "--stat", "cycles", "--n", "5"});
    const Json pj = jsonLines(plain.out).front();
    CHECK_FALSE(pj.contains("tail"));
    CHECK(pj["support"].size() == 1);
}

TEST_CASE("lipschitz certificate output") {
    const CliResult r = run({"lipschitz", "--stat", "inv", "--n", "4", "--threads", "1"});
    CHECK(r.code == 0);
    const Json j = jsonLines(r.out).front();
    CHECK(j["statistic"] == "inv");
    CHECK(j["supDelta"] == 5.0);
    CHECK(j["knownBound"] == 8.0);
}

TEST_CASE("verify suites pass and report json lines") {
    const CliResult coupling = run({"verify", "--check", "coupling", "--n-max", "4"});
    CHECK(coupling.code == 0);
    const auto lines = jsonLines(coupling.out);
    REQUIRE(lines.size() == 7); // six sources + the negative control
    for (const Json& j : lines) {
        CHECK(j["passed"] == true);
        CHECK(j["n"] == 4);
    }

    const CliResult eulerian = run({"verify", "--check", "eulerian", "--n-max", "5"});
    CHECK(eulerian.code == 0);
    CHECK(jsonLines(eulerian.out).size() == 5);

    const CliResult unknown = run({"verify", "--check", "nope"});
    CHECK(unknown.code == 2);
}

TEST_CASE("usage errors and help") {
    CHECK(run({}).code == 2);
    CHECK(run({"sample", "--n", "4", "--bogus"}).code == 2);
    CHECK(run({"sample"}).code == 2); // --n is required
    const CliResult help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("sample") != std::string::npos);
    const CliResult subHelp = run({"tail", "--help"});
    CHECK(subHelp.code == 0);
    CHECK(subHelp.out.find("--n-grid") != std::string::npos);
}

TEST_SUITE_END();
