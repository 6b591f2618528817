#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permld/rates.hpp"
#include "permld/rng.hpp"
#include "permld/samplers.hpp"
#include "permld/statistics.hpp"

namespace permld {

enum class TailDirection { GreaterEqual, LessEqual };

// Threshold as a function of n: either x * n^exponent, or the edge-centered
// moderate form 2 sqrt(n) + x * n^exponent.
struct ThresholdSpec {
    enum class Form { PowerLaw, Moderate };
    Form form = Form::PowerLaw;
    double x = 1.0;
    double exponent = 0.5;

    double value(int n) const;
};

struct ExperimentConfig {
    SamplerSpec sampler;
    StatisticId statistic;
    std::vector<int> nGrid;          // strictly increasing
    std::uint64_t samplesPerN = 0;
    ThresholdSpec threshold;
    double speedExponent = 0.5;      // beta in -ln p / n^beta
    TailDirection direction = TailDirection::GreaterEqual;
    RngSeed seed;
    int threads = 0;                 // 0 = hardware default

    void validate() const;
};

struct TailEstimate {
    int n = 0;
    double threshold = 0.0;
    std::uint64_t hits = 0;
    std::uint64_t total = 0;
    double pHat = 0.0;
    double ciLow = 0.0;   // exact binomial 95% interval
    double ciHigh = 1.0;
    // -ln(pHat) / n^beta; absent when no hit was observed (the empirical
    // rate is undefined there, not infinite: more samples could change it).
    std::optional<double> empiricalRate;
};

// Hit counting is sharded into fixed-size blocks, one RNG substream per
// shard, so the counts are bit-identical for every thread count. One call
// consumes substreams seed.stream+1 ... seed.stream+totalShards.
std::vector<TailEstimate> estimateTail(const ExperimentConfig& config);

struct RateCurveRow {
    TailEstimate estimate;
    ExtReal theory;
    std::optional<double> gap; // empiricalRate - theory when both are finite
};

struct RateCurveReport {
    std::string rateFn;
    double x = 0.0;
    std::vector<RateCurveRow> rows;
};

// Runs estimateTail and annotates each point with the named theoretical
// rate: "lis-half", "lis-one", "euler" or "moderate". Throws
// IncompatibleExponents unless the config's statistic, threshold form,
// exponents and direction are the ones that rate function describes.
RateCurveReport rateCurve(const ExperimentConfig& config, const std::string& rateFn);

struct CiDiagnosticRow {
    TailEstimate estimate;
    // Certified Ewens bound on ln P when the law is Ewens-like and the
    // threshold clears the mean cycle count; absent otherwise.
    std::optional<ExtReal> ewensLogBound;
};

struct CiDiagnostic {
    std::string law;
    double alpha = 0.0, beta = 0.0, epsilon = 0.0;
    std::vector<CiDiagnosticRow> rows;
};

// Estimates P(#cycles > eps * n^alpha) along the grid and reports the
// empirical decay rate at speed n^beta next to the certified bound.
CiDiagnostic ciDiagnostic(const SamplerSpec& law, double alpha, double beta,
                          double epsilon, const std::vector<int>& nGrid,
                          std::uint64_t samplesPerN, RngSeed seed, int threads = 0);

// Joint lower-tail event for the first d RSK rows: all prefix sums stay
// below the prefix sums of xs, in units of sqrt(n). xs must be strictly
// decreasing inside (0, 2). The empirical rate uses speed n.
TailEstimate jointRowsTail(const SamplerSpec& law, const std::vector<double>& xs, int n,
                           std::uint64_t samples, RngSeed seed, int threads = 0);

} // namespace permld
