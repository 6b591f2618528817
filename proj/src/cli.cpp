#include "permld/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "permld/json_io.hpp"
#include "permld/parallel.hpp"

namespace permld {

namespace {

struct SeedOpts {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
    void attach(CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed (key)");
        cmd->add_option("--stream", stream, "RNG substream base (default 0)");
    }
    RngSeed value() const { return {seed, stream}; }
};

std::vector<int> parseGrid(const std::string& text) {
    std::vector<int> grid;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) grid.push_back(std::stoi(token));
    return grid;
}

std::vector<double> parseDoubles(const std::string& text) {
    std::vector<double> xs;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) xs.push_back(std::stod(token));
    return xs;
}

TailDirection parseDirection(const std::string& text) {
    if (text == "ge") return TailDirection::GreaterEqual;
    if (text == "le") return TailDirection::LessEqual;
    throw DomainError("--direction must be ge or le");
}

void writeCsv(const std::string& path, const RateCurveReport* curve,
              const std::vector<TailEstimate>& rows) {
    std::ofstream f(path);
    if (!f) throw DomainError("cannot open csv file '" + path + "'");
    f << "n,threshold,hits,total,pHat,ciLow,ciHigh,empiricalRate,theory,gap\n";
    const auto emit = [&](const TailEstimate& est, const ExtReal* theory,
                          const std::optional<double>& gap) {
        f << est.n << ',' << est.threshold << ',' << est.hits << ',' << est.total << ','
          << est.pHat << ',' << est.ciLow << ',' << est.ciHigh << ',';
        if (est.empiricalRate) f << *est.empiricalRate;
        f << ',';
        if (theory) f << theory->toString();
        f << ',';
        if (gap) f << *gap;
        f << '\n';
    };
    if (curve) {
        for (const auto& row : curve->rows) emit(row.estimate, &row.theory, row.gap);
    } else {
        for (const auto& est : rows) emit(est, nullptr, std::nullopt);
    }
}

// Shared state for the verify subcommand's check registry.
struct VerifyRun {
    std::ostream& out;
    bool allPassed = true;
    void report(const VerificationReport& r) {
        allPassed = allPassed && r.passed;
        out << toJson(r).dump() << '\n';
    }
};

void runCouplingChecks(VerifyRun& run, int nMax) {
    const std::vector<std::string> sources = {"uniform",   "ewens:0.5", "ewens:2",
                                              "class:2,1,1", "class:2,2", "class:3,1"};
    for (int n = 4; n <= nMax; ++n) {
        for (const auto& src : sources) {
            run.report(verifyCoupling(SamplerSpec::parse(src), n));
        }
        run.report(verifyCouplingNegativeControl(n));
    }
}

void runBernoulliChecks(VerifyRun& run, int nMax) {
    for (double theta : {0.5, 1.0, 2.0, 5.0}) {
        for (int n = 1; n <= nMax; ++n) {
            run.report(verifyBernoulliCycles(theta, n));
        }
    }
}

void runMergeLisChecks(VerifyRun& run, int nMax) {
    for (int n = 1; n <= nMax; ++n) {
        // One summary line per n; individual failures (if any) get their own
        // lines so the offending source is visible.
        VerificationReport summary;
        summary.checkName = "merge-lis-increase";
        summary.detail =
            "all sources in S_" + std::to_string(n) + ", kMax=" + std::to_string(n);
        summary.n = n;
        summary.tolerance = 0.0;
        summary.maxDiscrepancy = 0.0;
        summary.passed = true;
        enumerateAll(n, [&](const Permutation& s) {
            const auto r = verifyMergeLisIncrease(s, n);
            if (!r.passed) run.report(r);
            summary.maxDiscrepancy = std::max(summary.maxDiscrepancy, r.maxDiscrepancy);
            summary.passed = summary.passed && r.passed;
        });
        run.report(summary);
    }
}

void runCosetChecks(VerifyRun& run, int nMax) {
    for (int k = 2; k <= nMax; ++k) {
        for (double x : {1.0, 2.0}) {
            run.report(verifyCyclicCosetTail(k, x));
        }
    }
}

void runGreeneChecks(VerifyRun& run, int nMax, int threads) {
    for (int n = 1; n <= nMax; ++n) {
        run.report(verifyRskGreene(n, 3, threads));
    }
}

void runEulerianChecks(VerifyRun& run, int nMax) {
    for (int n = 1; n <= nMax; ++n) {
        run.report(verifyEulerian(n));
    }
}

void runTransferChecks(VerifyRun& run, int nMax, int threads) {
    for (const char* stat : {"lis", "lds", "descents"}) {
        for (int n = 2; n <= nMax; ++n) {
            run.report(verifyLipschitzTransfer(StatisticId::parse(stat), n, threads));
        }
    }
}

int dispatch(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
             std::ostream& err) {
    CLI::App app{"conjugacy-invariant permutation laws: samplers, statistics, "
                 "rate functions and exact verification"};
    app.require_subcommand(1);

    // --- sample ---
    auto* sampleCmd = app.add_subcommand("sample", "draw permutations as JSON lines");
    std::string sampleLaw = "uniform";
    int sampleN = 1;
    std::uint64_t sampleCount = 1;
    SeedOpts sampleSeed;
    sampleCmd->add_option("--law", sampleLaw, "law spec, e.g. uniform, ewens:2, t(uniform)");
    sampleCmd->add_option("--n", sampleN, "permutation size")->required();
    sampleCmd->add_option("--count", sampleCount, "number of draws (default 1)");
    sampleSeed.attach(sampleCmd);

    // --- stat ---
    auto* statCmd =
        app.add_subcommand("stat", "evaluate a statistic on JSON-line words from stdin");
    std::string statName = "lis";
    statCmd->add_option("--stat", statName, "statistic name")->required();

    // --- rate ---
    auto* rateCmd = app.add_subcommand("rate", "evaluate a rate function or bound");
    std::string rateFn;
    double rateX = 0.0, rateV = 0.0, rateT = 0.0, rateTheta = 1.0, rateAlpha = 1.0,
           rateEps = 1.0;
    int rateN = 1;
    rateCmd->add_option("--fn", rateFn,
                        "lis-half | lis-one | moderate | euler | bennett | ci-bound")
        ->required();
    rateCmd->add_option("--x", rateX, "argument for the rate functions");
    rateCmd->add_option("--v", rateV, "bennett: variance proxy");
    rateCmd->add_option("--t", rateT, "bennett: deviation");
    rateCmd->add_option("--theta", rateTheta, "ci-bound: Ewens parameter");
    rateCmd->add_option("--n", rateN, "ci-bound: size");
    rateCmd->add_option("--alpha", rateAlpha, "ci-bound: scale exponent");
    rateCmd->add_option("--epsilon", rateEps, "ci-bound: threshold factor");

    // --- tail ---
    auto* tailCmd = app.add_subcommand("tail", "Monte Carlo tail estimates over a grid");
    std::string tailLaw = "uniform", tailStat = "lis", tailGrid, tailDir = "ge",
                tailForm = "power", tailRateFn, tailCsv;
    std::uint64_t tailSamples = 10000;
    double tailX = 1.0, tailScaleExp = 0.5, tailSpeedExp = 0.5;
    int tailThreads = 0;
    SeedOpts tailSeed;
    tailCmd->add_option("--law", tailLaw, "law spec");
    tailCmd->add_option("--stat", tailStat, "scalar statistic");
    tailCmd->add_option("--n-grid", tailGrid, "comma-separated sizes")->required();
    tailCmd->add_option("--samples", tailSamples, "samples per size");
    tailCmd->add_option("--x", tailX, "threshold factor");
    tailCmd->add_option("--scale-exp", tailScaleExp,
                        "threshold exponent (alpha, or nu for --form moderate)");
    tailCmd->add_option("--form", tailForm, "power | moderate (default power)");
    tailCmd->add_option("--speed-exp", tailSpeedExp, "speed exponent beta");
    tailCmd->add_option("--direction", tailDir, "ge | le (default ge)");
    tailCmd->add_option("--rate-fn", tailRateFn, "annotate with a theoretical rate");
    tailCmd->add_option("--csv", tailCsv, "also write rows to this CSV file");
    tailCmd->add_option("--threads", tailThreads, "worker threads (0 = hardware)");
    tailSeed.attach(tailCmd);

    // --- joint-rows ---
    auto* jointCmd =
        app.add_subcommand("joint-rows", "joint lower tail of the first RSK rows");
    std::string jointLaw = "uniform", jointXs;
    int jointN = 1, jointThreads = 0;
    std::uint64_t jointSamples = 10000;
    SeedOpts jointSeed;
    jointCmd->add_option("--law", jointLaw, "law spec");
    jointCmd->add_option("--xs", jointXs, "strictly decreasing factors in (0,2)")
        ->required();
    jointCmd->add_option("--n", jointN, "permutation size")->required();
    jointCmd->add_option("--samples", jointSamples, "sample count");
    jointCmd->add_option("--threads", jointThreads, "worker threads (0 = hardware)");
    jointSeed.attach(jointCmd);

    // --- diagnose ---
    auto* diagCmd = app.add_subcommand(
        "diagnose", "empirical cycle-count decay against the certified bound");
    std::string diagLaw = "uniform", diagGrid;
    double diagAlpha = 0.5, diagBeta = 0.5, diagEps = 1.0;
    std::uint64_t diagSamples = 10000;
    int diagThreads = 0;
    SeedOpts diagSeed;
    diagCmd->add_option("--law", diagLaw, "law spec");
    diagCmd->add_option("--alpha", diagAlpha, "scale exponent")->required();
    diagCmd->add_option("--beta", diagBeta, "speed exponent")->required();
    diagCmd->add_option("--epsilon", diagEps, "threshold factor")->required();
    diagCmd->add_option("--n-grid", diagGrid, "comma-separated sizes")->required();
    diagCmd->add_option("--samples", diagSamples, "samples per size");
    diagCmd->add_option("--threads", diagThreads, "worker threads (0 = hardware)");
    diagSeed.attach(diagCmd);

    // --- exact ---
    auto* exactCmd =
        app.add_subcommand("exact", "exact small-n distribution of a statistic");
    std::string exactLawStr = "uniform", exactStat = "lis", exactDir = "ge";
    int exactN = 5, exactThreads = 0;
    double exactThr = 0.0;
    bool exactHasThr = false;
    exactCmd->add_option("--law", exactLawStr, "law spec");
    exactCmd->add_option("--stat", exactStat, "statistic name");
    exactCmd->add_option("--n", exactN, "permutation size")->required();
    exactCmd->add_option("--threshold", exactThr, "also report a tail probability")
        ->each([&](const std::string&) { exactHasThr = true; });
    exactCmd->add_option("--direction", exactDir, "ge | le for --threshold");
    exactCmd->add_option("--threads", exactThreads, "worker threads (0 = hardware)");

    // --- lipschitz ---
    auto* lipCmd =
        app.add_subcommand("lipschitz", "exhaustive per-transposition certificate");
    std::string lipStat = "lis";
    int lipN = 5, lipThreads = 0;
    lipCmd->add_option("--stat", lipStat, "statistic name")->required();
    lipCmd->add_option("--n", lipN, "permutation size")->required();
    lipCmd->add_option("--threads", lipThreads, "worker threads (0 = hardware)");

    // --- verify ---
    auto* verifyCmd =
        app.add_subcommand("verify", "run exact verification suites (JSON lines)");
    std::string verifyCheck = "all";
    int verifyNMax = 0, verifyThreads = 0;
    verifyCmd->add_option(
        "--check", verifyCheck,
        "coupling | bernoulli-cycles | merge-lis | coset-tail | rsk-greene | "
        "eulerian | lipschitz-transfer | all");
    verifyCmd->add_option("--n-max", verifyNMax, "override the per-check size cap");
    verifyCmd->add_option("--threads", verifyThreads, "worker threads (0 = hardware)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("permld");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        // Prints help or the parse error to the right stream; anything that
        // is not a clean help request maps to the usage exit code.
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    if (sampleCmd->parsed()) {
        const SamplerSpec spec = SamplerSpec::parse(sampleLaw);
        PhiloxRng rng(sampleSeed.value());
        for (std::uint64_t i = 0; i < sampleCount; ++i) {
            out << toJson(sample(spec, sampleN, rng)).dump() << '\n';
        }
        return 0;
    }

    if (statCmd->parsed()) {
        const StatisticId id = StatisticId::parse(statName);
        std::string line;
        std::size_t lineNo = 0;
        while (std::getline(in, line)) {
            ++lineNo;
            if (line.empty()) continue;
            Json j;
            try {
                j = Json::parse(line);
            } catch (const Json::parse_error& e) {
                throw DomainError("line " + std::to_string(lineNo) + ": " + e.what());
            }
            out << toJson(evaluate(id, permutationFromJson(j))).dump() << '\n';
        }
        return 0;
    }

    if (rateCmd->parsed()) {
        Json j{{"fn", rateFn}};
        if (rateFn == "lis-half") {
            j["x"] = rateX;
            j["value"] = toJson(iLisHalf(rateX));
        } else if (rateFn == "lis-one") {
            j["x"] = rateX;
            j["value"] = toJson(iLisOne(rateX));
        } else if (rateFn == "moderate") {
            j["x"] = rateX;
            j["value"] = moderateRate(rateX);
        } else if (rateFn == "euler") {
            j["x"] = rateX;
            j["value"] = toJson(iEuler(rateX));
        } else if (rateFn == "bennett") {
            j["v"] = rateV;
            j["t"] = rateT;
            j["value"] = bennettLogBound(rateV, rateT);
        } else if (rateFn == "ci-bound") {
            j["theta"] = rateTheta;
            j["n"] = rateN;
            j["alpha"] = rateAlpha;
            j["epsilon"] = rateEps;
            j["value"] = toJson(ciBoundEwens(rateTheta, rateN, rateAlpha, rateEps));
        } else {
            throw DomainError("unknown rate function '" + rateFn + "'");
        }
        out << j.dump() << '\n';
        return 0;
    }

    if (tailCmd->parsed()) {
        ExperimentConfig config;
        config.sampler = SamplerSpec::parse(tailLaw);
        config.statistic = StatisticId::parse(tailStat);
        config.nGrid = parseGrid(tailGrid);
        config.samplesPerN = tailSamples;
        config.threshold.x = tailX;
        config.threshold.exponent = tailScaleExp;
        if (tailForm == "moderate") {
            config.threshold.form = ThresholdSpec::Form::Moderate;
        } else if (tailForm != "power") {
            throw DomainError("--form must be power or moderate");
        }
        config.speedExponent = tailSpeedExp;
        config.direction = parseDirection(tailDir);
        config.seed = tailSeed.value();
        config.threads = tailThreads;
        if (!tailRateFn.empty()) {
            const RateCurveReport curve = rateCurve(config, tailRateFn);
            for (const auto& row : curve.rows) out << toJson(row).dump() << '\n';
            if (!tailCsv.empty()) writeCsv(tailCsv, &curve, {});
        } else {
            const auto rows = estimateTail(config);
            for (const auto& est : rows) out << toJson(est).dump() << '\n';
            if (!tailCsv.empty()) writeCsv(tailCsv, nullptr, rows);
        }
        return 0;
    }

    if (jointCmd->parsed()) {
        const auto est =
            jointRowsTail(SamplerSpec::parse(jointLaw), parseDoubles(jointXs), jointN,
                          jointSamples, jointSeed.value(), jointThreads);
        out << toJson(est).dump() << '\n';
        return 0;
    }

    if (diagCmd->parsed()) {
        const CiDiagnostic diag =
            ciDiagnostic(SamplerSpec::parse(diagLaw), diagAlpha, diagBeta, diagEps,
                         parseGrid(diagGrid), diagSamples, diagSeed.value(), diagThreads);
        for (const auto& row : diag.rows) {
            Json j = toJson(row);
            j["law"] = diag.law;
            j["alpha"] = diag.alpha;
            j["beta"] = diag.beta;
            j["epsilon"] = diag.epsilon;
            out << j.dump() << '\n';
        }
        return 0;
    }

    if (exactCmd->parsed()) {
        const auto dist = exactDistribution(StatisticId::parse(exactStat),
                                            SamplerSpec::parse(exactLawStr), exactN,
                                            exactThreads == 0 ? defaultThreadCount()
                                                              : exactThreads);
        Json j = toJson(dist);
        if (exactHasThr) {
            j["threshold"] = exactThr;
            j["direction"] = exactDir;
            j["tail"] = dist.tail(exactThr, parseDirection(exactDir) ==
                                                TailDirection::GreaterEqual);
        }
        out << j.dump() << '\n';
        return 0;
    }

    if (lipCmd->parsed()) {
        const auto cert =
            lipschitzSup(StatisticId::parse(lipStat), lipN,
                         lipThreads == 0 ? defaultThreadCount() : lipThreads);
        out << toJson(cert).dump() << '\n';
        return 0;
    }

    if (verifyCmd->parsed()) {
        VerifyRun run{out};
        const int threads = verifyThreads == 0 ? defaultThreadCount() : verifyThreads;
        const auto cap = [&](int dflt) { return verifyNMax > 0 ? verifyNMax : dflt; };
        bool known = false;
        if (verifyCheck == "coupling" || verifyCheck == "all") {
            runCouplingChecks(run, cap(6));
            known = true;
        }
        if (verifyCheck == "bernoulli-cycles" || verifyCheck == "all") {
            runBernoulliChecks(run, cap(8));
            known = true;
        }
        if (verifyCheck == "merge-lis" || verifyCheck == "all") {
            runMergeLisChecks(run, cap(5));
            known = true;
        }
        if (verifyCheck == "coset-tail" || verifyCheck == "all") {
            runCosetChecks(run, cap(6));
            known = true;
        }
        if (verifyCheck == "rsk-greene" || verifyCheck == "all") {
            runGreeneChecks(run, cap(7), threads);
            known = true;
        }
        if (verifyCheck == "eulerian" || verifyCheck == "all") {
            runEulerianChecks(run, cap(8));
            known = true;
        }
        if (verifyCheck == "lipschitz-transfer" || verifyCheck == "all") {
            runTransferChecks(run, cap(6), threads);
            known = true;
        }
        if (!known) throw DomainError("unknown check '" + verifyCheck + "'");
        return run.allPassed ? 0 : 1;
    }

    err << "no subcommand given\n";
    return 2;
}

} // namespace

int runCli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
           std::ostream& err) {
    try {
        return dispatch(args, in, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace permld
