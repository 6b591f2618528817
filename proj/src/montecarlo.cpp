#include "permld/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "permld/numerics.hpp"
#include "permld/parallel.hpp"

namespace permld {

namespace {

// Fixed shard size: the shard layout (and with it every substream) depends
// only on the sample count, never on the thread count.
constexpr std::uint64_t kShardSamples = 1024;

int resolveThreads(int threads) {
    return threads == 0 ? defaultThreadCount() : std::max(1, threads);
}

std::optional<double> empiricalRate(double pHat, int n, double beta) {
    if (pHat <= 0.0) return std::nullopt;
    return -std::log(pHat) / std::pow(n, beta);
}

TailEstimate finishEstimate(int n, double threshold, std::uint64_t hits,
                            std::uint64_t total, double beta) {
    TailEstimate est;
    est.n = n;
    est.threshold = threshold;
    est.hits = hits;
    est.total = total;
    est.pHat = static_cast<double>(hits) / static_cast<double>(total);
    const BinomialCi ci = clopperPearson(hits, total);
    est.ciLow = ci.low;
    est.ciHigh = ci.high;
    est.empiricalRate = empiricalRate(est.pHat, n, beta);
    return est;
}

// Shared sharded counting loop: predicate(rng, n) -> bool, one call per
// sample. Returns total hits; advances *streamCursor past the consumed
// substreams.
template <class Predicate>
std::uint64_t countHits(int n, std::uint64_t samples, const RngSeed& seed,
                        std::uint64_t* streamCursor, int threads,
                        const Predicate& predicate) {
    const auto shardCount = static_cast<int>((samples + kShardSamples - 1) / kShardSamples);
    const auto shards = makeShards(samples, shardCount);
    std::vector<std::uint64_t> hits(static_cast<std::size_t>(shardCount), 0);
    const std::uint64_t streamBase = *streamCursor;
    runShards(shardCount, threads, [&](int shard) {
        const auto [lo, hi] = shards[static_cast<std::size_t>(shard)];
        if (lo >= hi) return;
        PhiloxRng rng(seed.seed,
                      seed.stream + streamBase + static_cast<std::uint64_t>(shard) + 1);
        std::uint64_t h = 0;
        for (std::uint64_t i = lo; i < hi; ++i) h += predicate(rng, n);
        hits[static_cast<std::size_t>(shard)] = h;
    });
    *streamCursor = streamBase + static_cast<std::uint64_t>(shardCount);
    std::uint64_t total = 0;
    for (std::uint64_t h : hits) total += h; // serial, shard order
    return total;
}

} // namespace

double ThresholdSpec::value(int n) const {
    switch (form) {
        case Form::PowerLaw: return x * std::pow(n, exponent);
        case Form::Moderate: return 2.0 * std::sqrt(n) + x * std::pow(n, exponent);
    }
    throw DomainError("corrupt ThresholdSpec");
}

void ExperimentConfig::validate() const {
    if (nGrid.empty()) throw DomainError("experiment needs a nonempty n grid");
    int prev = 0;
    for (int n : nGrid) {
        if (n < 1) throw DomainError("grid entries must be >= 1");
        if (n <= prev) throw DomainError("grid must be strictly increasing");
        prev = n;
    }
    if (samplesPerN < 1) throw DomainError("experiment needs samplesPerN >= 1");
    if (!std::isfinite(threshold.x) || !std::isfinite(threshold.exponent)) {
        throw DomainError("threshold parameters must be finite");
    }
    if (!(speedExponent > 0.0)) throw DomainError("speed exponent must be > 0");
    if (statistic.isVector()) {
        throw DomainError("vector-valued statistic: use the joint rows entry point");
    }
}

std::vector<TailEstimate> estimateTail(const ExperimentConfig& config) {
    config.validate();
    const int threads = resolveThreads(config.threads);
    std::vector<TailEstimate> out;
    out.reserve(config.nGrid.size());
    std::uint64_t streamCursor = 0;
    for (int n : config.nGrid) {
        const double thr = config.threshold.value(n);
        const bool ge = config.direction == TailDirection::GreaterEqual;
        const auto hits = countHits(
            n, config.samplesPerN, config.seed, &streamCursor, threads,
            [&](PhiloxRng& rng, int size) {
                const Permutation s = sample(config.sampler, size, rng);
                const double v = evaluate(config.statistic, s).asScalar();
                return ge ? v >= thr : v <= thr;
            });
        out.push_back(finishEstimate(n, thr, hits, config.samplesPerN,
                                     config.speedExponent));
    }
    return out;
}

RateCurveReport rateCurve(const ExperimentConfig& config, const std::string& rateFn) {
    config.validate();
    const double x = config.threshold.x;
    const auto wrong = [&](const std::string& why) {
        return IncompatibleExponents("rate function '" + rateFn + "': " + why);
    };

    ExtReal theory = ExtReal::posInf();
    if (rateFn == "lis-half") {
        if (config.statistic.tag != StatTag::Lis) throw wrong("needs the lis statistic");
        if (config.threshold.form != ThresholdSpec::Form::PowerLaw ||
            config.threshold.exponent != 0.5) {
            throw wrong("needs threshold x * n^0.5");
        }
        if (config.speedExponent != 0.5) throw wrong("needs speed n^0.5");
        if (config.direction != TailDirection::GreaterEqual) {
            throw wrong("describes the upper tail");
        }
        theory = iLisHalf(x);
    } else if (rateFn == "lis-one") {
        if (config.statistic.tag != StatTag::Lis) throw wrong("needs the lis statistic");
        if (config.threshold.form != ThresholdSpec::Form::PowerLaw ||
            config.threshold.exponent != 0.5) {
            throw wrong("needs threshold x * n^0.5");
        }
        if (config.speedExponent != 1.0) throw wrong("needs speed n^1");
        if (config.direction != TailDirection::LessEqual) {
            throw wrong("describes the lower tail");
        }
        theory = iLisOne(x);
    } else if (rateFn == "euler") {
        if (config.statistic.tag != StatTag::Descents &&
            config.statistic.tag != StatTag::Ascents) {
            throw wrong("needs the descents or ascents statistic");
        }
        if (config.threshold.form != ThresholdSpec::Form::PowerLaw ||
            config.threshold.exponent != 1.0) {
            throw wrong("needs threshold x * n");
        }
        if (config.speedExponent != 1.0) throw wrong("needs speed n^1");
        const bool upper = config.direction == TailDirection::GreaterEqual;
        if (upper && !(x > 0.5)) throw wrong("upper tail needs x > 1/2");
        if (!upper && !(x < 0.5)) throw wrong("lower tail needs x < 1/2");
        theory = iEuler(x);
    } else if (rateFn == "moderate") {
        if (config.statistic.tag != StatTag::Lis) throw wrong("needs the lis statistic");
        if (config.threshold.form != ThresholdSpec::Form::Moderate) {
            throw wrong("needs threshold 2*sqrt(n) + x * n^nu");
        }
        const double nu = config.threshold.exponent;
        if (!(nu > 1.0 / 6.0 && nu < 0.5)) throw wrong("needs nu in (1/6, 1/2)");
        const double beta = 1.5 * nu - 0.25;
        if (std::fabs(config.speedExponent - beta) > 1e-12) {
            throw wrong("speed must be n^(3nu/2 - 1/4)");
        }
        if (config.direction != TailDirection::GreaterEqual) {
            throw wrong("describes the upper tail");
        }
        if (!(x > 0.0)) throw wrong("needs x > 0");
        theory = ExtReal::finite(moderateRate(x));
    } else {
        throw IncompatibleExponents("unknown rate function '" + rateFn + "'");
    }

    RateCurveReport report;
    report.rateFn = rateFn;
    report.x = x;
    for (const TailEstimate& est : estimateTail(config)) {
        RateCurveRow row;
        row.estimate = est;
        row.theory = theory;
        if (est.empiricalRate && theory.isFinite()) {
            row.gap = *est.empiricalRate - theory.value;
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

CiDiagnostic ciDiagnostic(const SamplerSpec& law, double alpha, double beta,
                          double epsilon, const std::vector<int>& nGrid,
                          std::uint64_t samplesPerN, RngSeed seed, int threads) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("ciDiagnostic needs alpha in (0,1]");
    if (!(beta > 0.0)) throw DomainError("ciDiagnostic needs beta > 0");
    if (!(epsilon > 0.0)) throw DomainError("ciDiagnostic needs epsilon > 0");
    ExperimentConfig probe;
    probe.sampler = law;
    probe.statistic = {StatTag::Cycles};
    probe.nGrid = nGrid;
    probe.samplesPerN = samplesPerN;
    probe.threads = threads;
    probe.validate();

    // Ewens-like laws get both the fast cycle-count sampler and the
    // certified bound.
    std::optional<double> theta;
    switch (law.kind) {
        case SamplerSpec::Kind::Uniform: theta = 1.0; break;
        case SamplerSpec::Kind::Cyclic: theta = 0.0; break;
        case SamplerSpec::Kind::Ewens: theta = law.theta; break;
        default: break;
    }

    CiDiagnostic diag;
    diag.law = law.name();
    diag.alpha = alpha;
    diag.beta = beta;
    diag.epsilon = epsilon;

    const int workers = resolveThreads(threads);
    std::uint64_t streamCursor = 0;
    for (int n : nGrid) {
        const double thr = epsilon * std::pow(n, alpha);
        std::uint64_t hits = 0;
        if (theta) {
            const EwensParams params{*theta, n};
            hits = countHits(n, samplesPerN, seed, &streamCursor, workers,
                             [&](PhiloxRng& rng, int) {
                                 return sampleBernoulliCycleCount(params, rng) > thr;
                             });
        } else {
            hits = countHits(n, samplesPerN, seed, &streamCursor, workers,
                             [&](PhiloxRng& rng, int size) {
                                 return sample(law, size, rng).numCycles() > thr;
                             });
        }
        CiDiagnosticRow row;
        row.estimate = finishEstimate(n, thr, hits, samplesPerN, beta);
        if (theta) {
            try {
                row.ewensLogBound = ciBoundEwens(*theta, n, alpha, epsilon);
            } catch (const DomainError&) {
                // Threshold below the mean: no bound at this n.
            }
        }
        diag.rows.push_back(std::move(row));
    }
    return diag;
}

TailEstimate jointRowsTail(const SamplerSpec& law, const std::vector<double>& xs, int n,
                           std::uint64_t samples, RngSeed seed, int threads) {
    if (xs.empty()) throw DomainError("jointRowsTail needs at least one x");
    double prev = 2.0;
    for (double x : xs) {
        if (!(x > 0.0 && x < 2.0)) throw DomainError("jointRowsTail needs xs in (0,2)");
        if (!(x < prev)) throw DomainError("jointRowsTail needs strictly decreasing xs");
        prev = x;
    }
    if (n < 1) throw DomainError("jointRowsTail needs n >= 1");
    if (samples < 1) throw DomainError("jointRowsTail needs samples >= 1");

    const int d = static_cast<int>(xs.size());
    const StatisticId stat{StatTag::RskRows, d};
    const double sqrtN = std::sqrt(n);
    std::vector<double> bounds(xs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        acc += xs[i];
        bounds[i] = acc * sqrtN;
    }

    std::uint64_t streamCursor = 0;
    const auto hits = countHits(
        n, samples, seed, &streamCursor, resolveThreads(threads),
        [&](PhiloxRng& rng, int size) {
            const Permutation s = sample(law, size, rng);
            const StatValue v = evaluate(stat, s);
            for (std::size_t i = 0; i < bounds.size(); ++i) {
                if (v.values[i] > bounds[i]) return false;
            }
            return true;
        });
    // Joint lower-tail deviations live at speed n.
    TailEstimate est = finishEstimate(n, bounds.front(), hits, samples, 1.0);
    return est;
}

} // namespace permld
