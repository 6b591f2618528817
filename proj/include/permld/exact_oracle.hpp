#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "permld/permutation.hpp"
#include "permld/samplers.hpp"
#include "permld/statistics.hpp"

namespace permld {

// Small-n ground truth by exhaustive enumeration. Everything here is exact
// up to floating-point rounding of the final probabilities; wherever a check
// can be settled in integers it is (branch counts, histograms, shapes), so
// those reports carry tolerance 0.

struct ExactDistribution {
    StatisticId statistic;
    std::string law; // sampler name, for report output
    int n = 0;
    std::vector<StatValue> support; // sorted ascending
    std::vector<double> probs;      // aligned with support

    double prob(const StatValue& v) const; // 0 when absent
    double totalMass() const;
    // P(stat >= threshold) or P(stat <= threshold); scalar statistics only.
    double tail(double threshold, bool greaterEqual) const;
};

// Uniform invariant across all verification entry points: passed is exactly
// maxDiscrepancy <= tolerance.
struct VerificationReport {
    std::string checkName;
    std::string detail;
    int n = 0;
    double maxDiscrepancy = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

// Law of the sampler as a dense vector over S_n indexed by lexicographic
// rank. Computed from the defining formulas (not by sampling).
std::vector<double> exactLaw(const SamplerSpec& spec, int n,
                             std::optional<int> limitOverride = std::nullopt);

// Enumerates the merge branches of s exactly as the sampler draws them: one
// representative per cycle (canonical cycle order) crossed with every
// visiting order of the remaining cycles. Calls fn once per branch; all
// branches are equally likely under the sampler and there are
// mergeTargetCount(s) of them (a single cycle yields the one branch s).
void forEachMergeBranch(const Permutation& s,
                        const std::function<void(const Permutation&)>& fn);

// Pushforward of a law vector under one step of the merge operator.
std::vector<double> pushforwardMerge(const std::vector<double>& law, int n);

double totalVariation(const std::vector<double>& p, const std::vector<double>& q);

// Exact distribution of a statistic under Ewens(theta), accumulated as
// integer counts per (value, cycle count) and weighted afterwards; for
// theta = 1 the result is count / n! with no intermediate rounding.
ExactDistribution exactEwensDistribution(const StatisticId& id, double theta, int n,
                                         int threads = 1,
                                         std::optional<int> limitOverride = std::nullopt);

// General version: Ewens-like laws (uniform, cyclic, ewens) go through the
// count path above, everything else through the dense law vector.
ExactDistribution exactDistribution(const StatisticId& id, const SamplerSpec& spec, int n,
                                    int threads = 1,
                                    std::optional<int> limitOverride = std::nullopt);

// P(cycle count = k) under Ewens(theta) by enumeration, index k = 0..n.
std::vector<double> cycleCountDistribution(double theta, int n,
                                           std::optional<int> limitOverride = std::nullopt);

// Same law predicted by the independent-Bernoulli decomposition of the
// cycle count, via exact convolution.
std::vector<double> bernoulliCycleConvolution(double theta, int n);

// Largest total length of k disjoint increasing subsequences, by scanning
// position subsets and keeping those whose longest decreasing subsequence
// is at most k (a subword splits into k increasing pieces exactly when no
// decreasing run exceeds k).
int maxDisjointIncreasing(const Permutation& s, int k);

// --- verification entry points ---

// One merge step applied to the source law lands exactly on the uniform
// n-cycle law (total variation within 1e-12).
VerificationReport verifyCoupling(const SamplerSpec& source, int n,
                                  std::optional<int> limitOverride = std::nullopt);
// A deliberately non-invariant source (a point mass) must NOT couple:
// the same pushforward stays at total variation > 1e-3.
VerificationReport verifyCouplingNegativeControl(int n,
                                                 std::optional<int> limitOverride = std::nullopt);

// Cycle-count law by enumeration == independent-Bernoulli convolution
// (sup norm within 1e-12).
VerificationReport verifyBernoulliCycles(double theta, int n,
                                         std::optional<int> limitOverride = std::nullopt);

// For every k <= kMax: P(lis(merge(s)) <= lis(s) + k), with the merge branch
// uniform, is at least min over tau in S_m of P(lis(tau * C) < k) for C a
// uniform m-cycle, m = numCycles(s). Settled in exact integer arithmetic.
VerificationReport verifyMergeLisIncrease(const Permutation& source, int kMax);

// For every tau in S_k: P(lis(tau * C) >= x sqrt(k)) over uniform k-cycles C
// is at most k * P(lis(uniform) >= x sqrt(k)). Exact integers.
VerificationReport verifyCyclicCosetTail(int k, double x);

// RSK prefix sums match the direct disjoint-increasing-subsequence maxima
// for d = 1..dMax, plus lis == first row and lds == number of rows.
VerificationReport verifyRskGreene(int n, int dMax, int threads = 1,
                                   std::optional<int> limitOverride = std::nullopt);

// descents, ascents and exceedances share one histogram over S_n.
VerificationReport verifyEulerian(int n,
                                  std::optional<int> limitOverride = std::nullopt);

// Per-merge bound from the per-transposition certificate: for every s and
// every merge branch r, distance(f(s), f(r)) <= supDelta * numCycles(s).
VerificationReport verifyLipschitzTransfer(const StatisticId& id, int n, int threads = 1,
                                           std::optional<int> limitOverride = std::nullopt);

} // namespace permld
