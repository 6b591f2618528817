#include "permld/exact_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "permld/numerics.hpp"
#include "permld/parallel.hpp"

namespace permld {

namespace {

constexpr double kCouplingTol = 1e-12;
constexpr double kSupNormTol = 1e-12;
constexpr double kControlMinTv = 1e-3;
constexpr double kTransferTol = 1e-12;

std::string fmtG(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

// One log-weight per cycle count k: ln of theta^(k-1) / prod_{i=1}^{n-1}(theta+i).
// Callers special-case theta in {0, 1}.
std::vector<double> ewensLogWeights(double theta, int n) {
    double logDen = 0.0;
    for (int i = 1; i <= n - 1; ++i) logDen += std::log(theta + i);
    std::vector<double> lw(static_cast<std::size_t>(n) + 1,
                           -std::numeric_limits<double>::infinity());
    for (int k = 1; k <= n; ++k) {
        lw[static_cast<std::size_t>(k)] = (k - 1) * std::log(theta) - logDen;
    }
    return lw;
}

// Longest strictly decreasing subsequence of an arbitrary distinct-valued
// sequence (subwords are not permutations, so this lives here rather than on
// Permutation).
int ldsOfSequence(const std::vector<int>& seq) {
    std::vector<int> tails; // tails[k]: largest possible last value, length k+1
    for (int x : seq) {
        auto it = std::lower_bound(tails.begin(), tails.end(), x, std::greater<int>());
        if (it == tails.end()) {
            tails.push_back(x);
        } else {
            *it = x;
        }
    }
    return static_cast<int>(tails.size());
}

// maxDisjointIncreasing for every k = 1..kMax in one subset sweep.
std::vector<int> maxDisjointIncreasingUpTo(const Permutation& s, int kMax) {
    const int n = s.size();
    if (n > 20) throw LimitExceeded("subset sweep needs n <= 20");
    const auto& w = s.word();
    std::vector<int> best(static_cast<std::size_t>(kMax) + 1, 0);
    std::vector<int> subword;
    subword.reserve(static_cast<std::size_t>(n));
    const std::uint32_t full = n >= 32 ? 0xffffffffu : ((1u << n) - 1u);
    for (std::uint32_t mask = 0;; ++mask) {
        subword.clear();
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) subword.push_back(w[static_cast<std::size_t>(i)]);
        }
        const int size = static_cast<int>(subword.size());
        const int need = ldsOfSequence(subword); // min #increasing pieces (Dilworth)
        for (int k = std::max(need, 1); k <= kMax; ++k) {
            if (size > best[static_cast<std::size_t>(k)]) {
                best[static_cast<std::size_t>(k)] = size;
            }
        }
        if (mask == full) break;
    }
    return best;
}

std::vector<Permutation> allCycles(int m) {
    std::vector<Permutation> out;
    enumerateAll(m, [&](const Permutation& c) {
        if (c.isSingleCycle()) out.push_back(c);
    });
    return out;
}

VerificationReport makeReport(std::string name, std::string detail, int n,
                              double discrepancy, double tolerance) {
    VerificationReport r;
    r.checkName = std::move(name);
    r.detail = std::move(detail);
    r.n = n;
    r.maxDiscrepancy = discrepancy;
    r.tolerance = tolerance;
    r.passed = discrepancy <= tolerance;
    return r;
}

} // namespace

double ExactDistribution::prob(const StatValue& v) const {
    const auto it = std::lower_bound(support.begin(), support.end(), v);
    if (it == support.end() || !(*it == v)) return 0.0;
    return probs[static_cast<std::size_t>(it - support.begin())];
}

double ExactDistribution::totalMass() const {
    KahanSum s;
    for (double p : probs) s.add(p);
    return s.value();
}

double ExactDistribution::tail(double threshold, bool greaterEqual) const {
    KahanSum s;
    for (std::size_t i = 0; i < support.size(); ++i) {
        const double v = support[i].asScalar();
        const bool in = greaterEqual ? v >= threshold : v <= threshold;
        if (in) s.add(probs[i]);
    }
    return s.value();
}

std::vector<double> exactLaw(const SamplerSpec& spec, int n,
                             std::optional<int> limitOverride) {
    const std::uint64_t total = factorial(n);
    std::vector<double> law(total, 0.0);
    switch (spec.kind) {
        case SamplerSpec::Kind::Uniform: {
            // Still respect the enumeration cap for consistency.
            PermutationEnumerator gate(n, limitOverride);
            (void)gate;
            std::fill(law.begin(), law.end(), 1.0 / static_cast<double>(total));
            return law;
        }
        case SamplerSpec::Kind::Cyclic: {
            const double p = 1.0 / static_cast<double>(factorial(n - 1));
            std::uint64_t r = 0;
            enumerateAll(n, [&](const Permutation& s) {
                if (s.isSingleCycle()) law[r] = p;
                ++r;
            }, limitOverride);
            return law;
        }
        case SamplerSpec::Kind::Ewens: {
            if (spec.theta == 0.0) return exactLaw(SamplerSpec{SamplerSpec::Kind::Cyclic}, n, limitOverride);
            if (spec.theta == 1.0) return exactLaw(SamplerSpec{SamplerSpec::Kind::Uniform}, n, limitOverride);
            const auto lw = ewensLogWeights(spec.theta, n);
            std::uint64_t r = 0;
            enumerateAll(n, [&](const Permutation& s) {
                law[r] = std::exp(lw[static_cast<std::size_t>(s.numCycles())]);
                ++r;
            }, limitOverride);
            return law;
        }
        case SamplerSpec::Kind::Class: {
            std::vector<int> type = resolveClassParts(spec.parts, n);
            std::sort(type.rbegin(), type.rend());
            std::vector<std::uint64_t> hits;
            std::uint64_t r = 0;
            enumerateAll(n, [&](const Permutation& s) {
                if (cycleType(s) == type) hits.push_back(r);
                ++r;
            }, limitOverride);
            const double p = 1.0 / static_cast<double>(hits.size());
            for (std::uint64_t h : hits) law[h] = p;
            return law;
        }
        case SamplerSpec::Kind::Mixture: {
            const MixtureParams params{spec.x, spec.c, n};
            params.validate();
            const double logq = -params.c * std::sqrt(n);
            const double q = logq >= std::log(1e-300) ? std::exp(logq) : 0.0;
            const int k = params.fixedPoints();
            SamplerSpec rare;
            rare.kind = SamplerSpec::Kind::Class;
            rare.parts.assign(static_cast<std::size_t>(k), 1);
            rare.parts.insert(rare.parts.begin(), n - k);
            const auto rareLaw = exactLaw(rare, n, limitOverride);
            const auto cycLaw =
                exactLaw(SamplerSpec{SamplerSpec::Kind::Cyclic}, n, limitOverride);
            for (std::uint64_t i = 0; i < total; ++i) {
                law[i] = q * rareLaw[i] + (1.0 - q) * cycLaw[i];
            }
            return law;
        }
        case SamplerSpec::Kind::Point: {
            if (static_cast<int>(spec.pointWord.size()) != n) {
                throw SizeMismatch("point law size mismatch");
            }
            PermutationEnumerator gate(n, limitOverride);
            (void)gate;
            law[rankOf(Permutation(spec.pointWord))] = 1.0;
            return law;
        }
        case SamplerSpec::Kind::TWrap: {
            return pushforwardMerge(exactLaw(*spec.inner, n, limitOverride), n);
        }
    }
    throw DomainError("corrupt SamplerSpec");
}

void forEachMergeBranch(const Permutation& s,
                        const std::function<void(const Permutation&)>& fn) {
    const CycleDecomposition cd = cycleDecomposition(s);
    const int m = cd.numCycles();
    if (m == 1) {
        fn(s);
        return;
    }
    const auto& w0 = s.word();
    std::vector<std::size_t> repIdx(static_cast<std::size_t>(m), 0);
    std::vector<int> rest(static_cast<std::size_t>(m) - 1);
    std::vector<int> seq(static_cast<std::size_t>(m));
    for (;;) {
        // Current representative of each cycle.
        seq[0] = cd.cycles[0][repIdx[0]];
        std::iota(rest.begin(), rest.end(), 1);
        do {
            for (int t = 1; t < m; ++t) {
                const auto cyc = static_cast<std::size_t>(rest[static_cast<std::size_t>(t) - 1]);
                seq[static_cast<std::size_t>(t)] = cd.cycles[cyc][repIdx[cyc]];
            }
            std::vector<int> w = w0;
            for (int t = 0; t < m; ++t) {
                const int from = seq[static_cast<std::size_t>(t)];
                const int to = seq[static_cast<std::size_t>((t + 1) % m)];
                w[static_cast<std::size_t>(from) - 1] = s(to);
            }
            fn(Permutation::fromWordUnchecked(std::move(w)));
        } while (std::next_permutation(rest.begin(), rest.end()));
        // Odometer over the representative choices.
        int k = 0;
        while (k < m && ++repIdx[static_cast<std::size_t>(k)] ==
                            cd.cycles[static_cast<std::size_t>(k)].size()) {
            repIdx[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == m) break;
    }
}

std::vector<double> pushforwardMerge(const std::vector<double>& law, int n) {
    const std::uint64_t total = factorial(n);
    if (law.size() != total) throw SizeMismatch("law vector has wrong length");
    std::vector<double> out(total, 0.0);
    std::uint64_t r = 0;
    enumerateAll(n, [&](const Permutation& s) {
        const double p = law[r++];
        if (p == 0.0) return;
        const double weight = p / static_cast<double>(mergeTargetCount(s));
        forEachMergeBranch(s, [&](const Permutation& rho) {
            out[rankOf(rho)] += weight;
        });
    });
    return out;
}

double totalVariation(const std::vector<double>& p, const std::vector<double>& q) {
    if (p.size() != q.size()) throw SizeMismatch("totalVariation: length mismatch");
    KahanSum s;
    for (std::size_t i = 0; i < p.size(); ++i) s.add(std::fabs(p[i] - q[i]));
    return 0.5 * s.value();
}

ExactDistribution exactEwensDistribution(const StatisticId& id, double theta, int n,
                                         int threads, std::optional<int> limitOverride) {
    EwensParams{theta, n}.validate();
    PermutationEnumerator gate(n, limitOverride);
    (void)gate;
    const std::uint64_t total = factorial(n);
    const int shardCount = static_cast<int>(std::min<std::uint64_t>(64, total));
    const auto shards = makeShards(total, shardCount);

    using CountMap = std::map<StatValue, std::vector<std::uint64_t>>;
    std::vector<CountMap> local(static_cast<std::size_t>(shardCount));

    runShards(shardCount, threads, [&](int shard) {
        const auto [lo, hi] = shards[static_cast<std::size_t>(shard)];
        if (lo >= hi) return;
        CountMap counts;
        std::vector<int> w = unrank(n, lo).word();
        for (std::uint64_t r = lo; r < hi; ++r) {
            const Permutation s = Permutation::fromWordUnchecked(w);
            auto& perK = counts[evaluate(id, s)];
            if (perK.empty()) perK.assign(static_cast<std::size_t>(n) + 1, 0);
            ++perK[static_cast<std::size_t>(s.numCycles())];
            std::next_permutation(w.begin(), w.end());
        }
        local[static_cast<std::size_t>(shard)] = std::move(counts);
    });

    CountMap merged;
    for (const auto& m : local) {
        for (const auto& [value, perK] : m) {
            auto& dst = merged[value];
            if (dst.empty()) dst.assign(static_cast<std::size_t>(n) + 1, 0);
            for (std::size_t k = 0; k < perK.size(); ++k) dst[k] += perK[k];
        }
    }

    ExactDistribution out;
    out.statistic = id;
    out.law = "ewens:" + fmtG(theta);
    out.n = n;
    out.support.reserve(merged.size());
    out.probs.reserve(merged.size());
    const bool thetaOne = theta == 1.0;
    const bool thetaZero = theta == 0.0;
    std::vector<double> lw;
    if (!thetaOne && !thetaZero) lw = ewensLogWeights(theta, n);
    for (const auto& [value, perK] : merged) {
        double p = 0.0;
        if (thetaOne) {
            std::uint64_t c = 0;
            for (std::uint64_t x : perK) c += x;
            p = static_cast<double>(c) / static_cast<double>(total);
        } else if (thetaZero) {
            p = static_cast<double>(perK[1]) / static_cast<double>(factorial(n - 1));
        } else {
            KahanSum sum;
            for (int k = 1; k <= n; ++k) {
                if (perK[static_cast<std::size_t>(k)] == 0) continue;
                sum.add(static_cast<double>(perK[static_cast<std::size_t>(k)]) *
                        std::exp(lw[static_cast<std::size_t>(k)]));
            }
            p = sum.value();
        }
        if (p == 0.0) continue; // theta = 0 drops multi-cycle-only values
        out.support.push_back(value);
        out.probs.push_back(p);
    }
    return out;
}

ExactDistribution exactDistribution(const StatisticId& id, const SamplerSpec& spec, int n,
                                    int threads, std::optional<int> limitOverride) {
    switch (spec.kind) {
        case SamplerSpec::Kind::Uniform: {
            auto d = exactEwensDistribution(id, 1.0, n, threads, limitOverride);
            d.law = spec.name();
            return d;
        }
        case SamplerSpec::Kind::Cyclic: {
            auto d = exactEwensDistribution(id, 0.0, n, threads, limitOverride);
            d.law = spec.name();
            return d;
        }
        case SamplerSpec::Kind::Ewens:
            return exactEwensDistribution(id, spec.theta, n, threads, limitOverride);
        default: break;
    }
    const auto law = exactLaw(spec, n, limitOverride);
    std::map<StatValue, KahanSum> acc;
    std::uint64_t r = 0;
    enumerateAll(n, [&](const Permutation& s) {
        const double p = law[r++];
        if (p != 0.0) acc[evaluate(id, s)].add(p);
    }, limitOverride);
    ExactDistribution out;
    out.statistic = id;
    out.law = spec.name();
    out.n = n;
    for (const auto& [value, sum] : acc) {
        out.support.push_back(value);
        out.probs.push_back(sum.value());
    }
    return out;
}

std::vector<double> cycleCountDistribution(double theta, int n,
                                           std::optional<int> limitOverride) {
    EwensParams{theta, n}.validate();
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(n) + 1, 0);
    enumerateAll(n, [&](const Permutation& s) {
        ++counts[static_cast<std::size_t>(s.numCycles())];
    }, limitOverride);
    std::vector<double> probs(static_cast<std::size_t>(n) + 1, 0.0);
    if (theta == 0.0) {
        probs[1] = 1.0;
        return probs;
    }
    if (theta == 1.0) {
        const auto total = static_cast<double>(factorial(n));
        for (int k = 1; k <= n; ++k) {
            probs[static_cast<std::size_t>(k)] =
                static_cast<double>(counts[static_cast<std::size_t>(k)]) / total;
        }
        return probs;
    }
    const auto lw = ewensLogWeights(theta, n);
    for (int k = 1; k <= n; ++k) {
        probs[static_cast<std::size_t>(k)] =
            static_cast<double>(counts[static_cast<std::size_t>(k)]) *
            std::exp(lw[static_cast<std::size_t>(k)]);
    }
    return probs;
}

std::vector<double> bernoulliCycleConvolution(double theta, int n) {
    EwensParams{theta, n}.validate();
    std::vector<double> dp(static_cast<std::size_t>(n) + 1, 0.0);
    dp[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        double p = 0.0;
        if (theta == 0.0) {
            p = i == 1 ? 1.0 : 0.0; // limiting case: one forced success
        } else {
            p = theta / (theta + i - 1);
        }
        for (int k = i; k >= 1; --k) {
            dp[static_cast<std::size_t>(k)] =
                dp[static_cast<std::size_t>(k)] * (1.0 - p) +
                dp[static_cast<std::size_t>(k) - 1] * p;
        }
        dp[0] *= 1.0 - p;
    }
    return dp;
}

int maxDisjointIncreasing(const Permutation& s, int k) {
    if (k < 1) throw DomainError("maxDisjointIncreasing needs k >= 1");
    return maxDisjointIncreasingUpTo(s, k)[static_cast<std::size_t>(k)];
}

VerificationReport verifyCoupling(const SamplerSpec& source, int n,
                                  std::optional<int> limitOverride) {
    const auto law = exactLaw(source, n, limitOverride);
    const auto push = pushforwardMerge(law, n);
    const auto target =
        exactLaw(SamplerSpec{SamplerSpec::Kind::Cyclic}, n, limitOverride);
    const double tv = totalVariation(push, target);
    return makeReport("coupling", "source=" + source.name(), n, tv, kCouplingTol);
}

VerificationReport verifyCouplingNegativeControl(int n,
                                                 std::optional<int> limitOverride) {
    if (n < 3) throw DomainError("negative control needs n >= 3");
    SamplerSpec point;
    point.kind = SamplerSpec::Kind::Point;
    point.pointWord.resize(static_cast<std::size_t>(n));
    std::iota(point.pointWord.begin(), point.pointWord.end(), 1);
    std::swap(point.pointWord[0], point.pointWord[1]); // a single transposition
    const auto law = exactLaw(point, n, limitOverride);
    const auto push = pushforwardMerge(law, n);
    const auto target =
        exactLaw(SamplerSpec{SamplerSpec::Kind::Cyclic}, n, limitOverride);
    const double tv = totalVariation(push, target);
    // Pass means the non-invariant source visibly fails to couple.
    auto r = makeReport("coupling-negative-control",
                        "source=" + point.name() + " tv=" + fmtG(tv), n,
                        std::max(0.0, kControlMinTv - tv), 0.0);
    return r;
}

VerificationReport verifyBernoulliCycles(double theta, int n,
                                         std::optional<int> limitOverride) {
    const auto byEnum = cycleCountDistribution(theta, n, limitOverride);
    const auto byConv = bernoulliCycleConvolution(theta, n);
    double sup = 0.0;
    for (std::size_t k = 0; k < byEnum.size(); ++k) {
        sup = std::max(sup, std::fabs(byEnum[k] - byConv[k]));
    }
    return makeReport("bernoulli-cycles", "theta=" + fmtG(theta), n, sup, kSupNormTol);
}

VerificationReport verifyMergeLisIncrease(const Permutation& source, int kMax) {
    if (kMax < 0) throw DomainError("verifyMergeLisIncrease needs kMax >= 0");
    const int m = source.numCycles();
    const int baseLis = lis(source);
    const std::uint64_t totalBranches = mergeTargetCount(source);

    // Left side: count merge branches by lis increase.
    std::vector<std::uint64_t> leftCnt(static_cast<std::size_t>(kMax) + 1, 0);
    forEachMergeBranch(source, [&](const Permutation& rho) {
        const int d = lis(rho) - baseLis;
        for (int k = std::max(d, 0); k <= kMax; ++k) {
            ++leftCnt[static_cast<std::size_t>(k)];
        }
    });

    // Right side: min over tau in S_m of #{m-cycles C : lis(tau*C) < k}.
    const std::uint64_t den = factorial(m - 1);
    std::vector<std::uint64_t> rightMin(static_cast<std::size_t>(kMax) + 1,
                                        std::numeric_limits<std::uint64_t>::max());
    const auto cycles = allCycles(m);
    enumerateAll(m, [&](const Permutation& tau) {
        std::vector<std::uint64_t> cnt(static_cast<std::size_t>(kMax) + 1, 0);
        for (const auto& c : cycles) {
            const int l = lis(compose(tau, c));
            for (int k = l + 1; k <= kMax; ++k) ++cnt[static_cast<std::size_t>(k)];
        }
        for (int k = 0; k <= kMax; ++k) {
            rightMin[static_cast<std::size_t>(k)] =
                std::min(rightMin[static_cast<std::size_t>(k)],
                         cnt[static_cast<std::size_t>(k)]);
        }
    });

    bool ok = true;
    double disc = 0.0;
    for (int k = 0; k <= kMax; ++k) {
        const std::uint64_t l = leftCnt[static_cast<std::size_t>(k)];
        const std::uint64_t rm = rightMin[static_cast<std::size_t>(k)];
        if (l * den < rm * totalBranches) ok = false; // exact fraction compare
        const double gap = static_cast<double>(rm) / static_cast<double>(den) -
                           static_cast<double>(l) / static_cast<double>(totalBranches);
        disc = std::max(disc, gap);
    }
    auto r = makeReport("merge-lis-increase",
                        "source=" + source.toString() + " kMax=" + std::to_string(kMax),
                        source.size(), std::max(0.0, disc), 0.0);
    r.passed = ok;
    return r;
}

VerificationReport verifyCyclicCosetTail(int k, double x) {
    if (k < 1) throw DomainError("verifyCyclicCosetTail needs k >= 1");
    if (!(x > 0.0)) throw DomainError("verifyCyclicCosetTail needs x > 0");
    const double thr = x * std::sqrt(k);
    const auto cycles = allCycles(k);
    const auto den = static_cast<double>(factorial(k - 1));

    std::uint64_t uniformTail = 0;
    enumerateAll(k, [&](const Permutation& s) { uniformTail += lis(s) >= thr; });

    bool ok = true;
    double disc = 0.0;
    enumerateAll(k, [&](const Permutation& tau) {
        std::uint64_t cosetTail = 0;
        for (const auto& c : cycles) cosetTail += lis(compose(tau, c)) >= thr;
        if (cosetTail > uniformTail) ok = false;
        disc = std::max(disc, (static_cast<double>(cosetTail) -
                               static_cast<double>(uniformTail)) / den);
    });
    auto r = makeReport("cyclic-coset-tail",
                        "k=" + std::to_string(k) + " x=" + fmtG(x), k,
                        std::max(0.0, disc), 0.0);
    r.passed = ok;
    return r;
}

VerificationReport verifyRskGreene(int n, int dMax, int threads,
                                   std::optional<int> limitOverride) {
    if (dMax < 1) throw DomainError("verifyRskGreene needs dMax >= 1");
    PermutationEnumerator gate(n, limitOverride);
    (void)gate;
    const std::uint64_t total = factorial(n);
    const int shardCount = static_cast<int>(std::min<std::uint64_t>(64, total));
    const auto shards = makeShards(total, shardCount);

    std::vector<std::uint64_t> mismatches(static_cast<std::size_t>(shardCount), 0);
    std::vector<double> worst(static_cast<std::size_t>(shardCount), 0.0);

    runShards(shardCount, threads, [&](int shard) {
        const auto [lo, hi] = shards[static_cast<std::size_t>(shard)];
        if (lo >= hi) return;
        std::vector<int> w = unrank(n, lo).word();
        std::uint64_t bad = 0;
        double sup = 0.0;
        for (std::uint64_t r = lo; r < hi; ++r) {
            const Permutation s = Permutation::fromWordUnchecked(w);
            const std::vector<int> shape = rskShape(s);
            if (lis(s) != shape.front()) {
                ++bad;
                sup = std::max(sup, static_cast<double>(std::abs(lis(s) - shape.front())));
            }
            if (lds(s) != static_cast<int>(shape.size())) {
                ++bad;
                sup = std::max(sup, static_cast<double>(std::abs(
                                        lds(s) - static_cast<int>(shape.size()))));
            }
            const auto direct = maxDisjointIncreasingUpTo(s, dMax);
            int prefix = 0;
            for (int d = 1; d <= dMax; ++d) {
                if (d <= static_cast<int>(shape.size())) {
                    prefix += shape[static_cast<std::size_t>(d) - 1];
                }
                const int got = direct[static_cast<std::size_t>(d)];
                if (got != prefix) {
                    ++bad;
                    sup = std::max(sup, static_cast<double>(std::abs(got - prefix)));
                }
            }
            std::next_permutation(w.begin(), w.end());
        }
        mismatches[static_cast<std::size_t>(shard)] = bad;
        worst[static_cast<std::size_t>(shard)] = sup;
    });

    std::uint64_t bad = 0;
    double sup = 0.0;
    for (int s = 0; s < shardCount; ++s) {
        bad += mismatches[static_cast<std::size_t>(s)];
        sup = std::max(sup, worst[static_cast<std::size_t>(s)]);
    }
    return makeReport("rsk-greene",
                      "dMax=" + std::to_string(dMax) + " mismatches=" +
                          std::to_string(bad) + " of " + std::to_string(total),
                      n, sup, 0.0);
}

VerificationReport verifyEulerian(int n, std::optional<int> limitOverride) {
    std::vector<std::uint64_t> histD(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> histA(static_cast<std::size_t>(n), 0);
    std::vector<std::uint64_t> histE(static_cast<std::size_t>(n), 0);
    enumerateAll(n, [&](const Permutation& s) {
        ++histD[static_cast<std::size_t>(descents(s))];
        ++histA[static_cast<std::size_t>(ascents(s))];
        ++histE[static_cast<std::size_t>(exceedances(s))];
    }, limitOverride);
    double sup = 0.0;
    for (std::size_t i = 0; i < histD.size(); ++i) {
        const auto d = static_cast<double>(histD[i]);
        sup = std::max(sup, std::fabs(d - static_cast<double>(histA[i])));
        sup = std::max(sup, std::fabs(d - static_cast<double>(histE[i])));
    }
    return makeReport("eulerian", "descents/ascents/exceedances histograms", n, sup, 0.0);
}

VerificationReport verifyLipschitzTransfer(const StatisticId& id, int n, int threads,
                                           std::optional<int> limitOverride) {
    const LipschitzCertificate cert = lipschitzSup(id, n, threads, limitOverride);
    double maxViolation = 0.0;
    enumerateAll(n, [&](const Permutation& s) {
        const StatValue base = evaluate(id, s);
        const double bound = cert.supDelta * s.numCycles();
        forEachMergeBranch(s, [&](const Permutation& rho) {
            const double d = distance(evaluate(id, rho), base);
            maxViolation = std::max(maxViolation, d - bound);
        });
    }, limitOverride);
    return makeReport("lipschitz-transfer",
                      "stat=" + id.name() + " supDelta=" + fmtG(cert.supDelta), n,
                      std::max(0.0, maxViolation), kTransferTol);
}

} // namespace permld
