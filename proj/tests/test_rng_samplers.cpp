#include <doctest.h>

#include "oracles.hpp"
#include "permld/rng.hpp"
#include "permld/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

using namespace permld;

namespace {

// Seeded statistical check: empirical frequency vs exact probability,
// allowing 4.5 binomial standard deviations.
void checkFrequency(double phat, double p, std::size_t samples) {
    const double sd = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    CHECK(std::abs(phat - p) <= 4.5 * sd + 1e-12);
}

} // namespace

TEST_SUITE_BEGIN("rng_samplers");

TEST_CASE("philox known-answer vectors") {
    using A4 = std::array<std::uint32_t, 4>;
    using A2 = std::array<std::uint32_t, 2>;
    CHECK(philoxBlock(A4{0, 0, 0, 0}, A2{0, 0}) ==
          A4{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philoxBlock(A4{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                      A2{0xffffffffu, 0xffffffffu}) ==
          A4{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philoxBlock(A4{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                      A2{0xa4093822u, 0x299f31d0u}) ==
          A4{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("generator lanes follow the block layout") {
    PhiloxRng rng(0, 0);
    CHECK(rng() == 0xe169c58d6627e8d5ull);
    CHECK(rng() == 0x9b00dbd8bc57ac4cull);
}

TEST_CASE("seed and stream determinism") {
    PhiloxRng a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    for (int i = 0; i < 100; ++i) CHECK(a() == b());
    CHECK(PhiloxRng(42, 7)() != c());
    CHECK(PhiloxRng(42, 7)() != d());
    PhiloxRng viaSeed(RngSeed{42, 7});
    CHECK(viaSeed() == PhiloxRng(42, 7)());
}

TEST_CASE("bounded draws stay in range and balanced") {
    PhiloxRng rng(2024, 1);
    CHECK(rng.below(1) == 0);
    std::array<int, 6> counts{};
    const int n = 60000;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t v = rng.below(6);
        REQUIRE(v < 6);
        ++counts[static_cast<std::size_t>(v)];
    }
    for (int k = 0; k < 6; ++k) {
        checkFrequency(counts[static_cast<std::size_t>(k)] / static_cast<double>(n),
                       1.0 / 6.0, n);
    }
}

TEST_CASE("unit doubles are uniform enough") {
    PhiloxRng rng(5, 0);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.real01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(std::abs(sum / n - 0.5) < 0.01);
}

TEST_CASE("fisher-yates visits every permutation once") {
    std::map<std::vector<int>, int> hits;
    int scripts = 0;
    oracles::forEachScript([&](oracles::ScriptRng& rng) {
        ++scripts;
        ++hits[sampleUniform(4, rng).word()];
    });
    CHECK(scripts == 24);
    CHECK(hits.size() == 24);
    for (const auto& [w, c] : hits) CHECK(c == 1);
}

TEST_CASE("sattolo visits every long cycle once") {
    std::map<std::vector<int>, int> hits;
    oracles::forEachScript([&](oracles::ScriptRng& rng) {
        ++hits[sampleCyclic(3, rng).word()];
    });
    REQUIRE(hits.size() == 2);
    CHECK(hits.count({2, 3, 1}) == 1);
    CHECK(hits.count({3, 1, 2}) == 1);

    std::map<std::vector<int>, int> hits4;
    oracles::forEachScript([&](oracles::ScriptRng& rng) {
        const Permutation p = sampleCyclic(4, rng);
        CHECK(p.isSingleCycle());
        ++hits4[p.word()];
    });
    CHECK(hits4.size() == 6);
    for (const auto& [w, c] : hits4) CHECK(c == 1);
}

TEST_CASE("class sampler is uniform on the class") {
    std::map<std::vector<int>, int> hits;
    oracles::forEachScript([&](oracles::ScriptRng& rng) {
        ++hits[sampleConjugacyClass({2, 1}, rng).word()];
    });
    // 3! arrangements over 3 transpositions: each exactly twice.
    REQUIRE(hits.size() == 3);
    for (const auto& [w, c] : hits) {
        CHECK(c == 2);
        CHECK(cycleType(Permutation(w)) == std::vector<int>{2, 1});
    }
    PhiloxRng prng(1);
    CHECK_THROWS_AS(sampleConjugacyClass(std::vector<int>{}, prng), InvalidCycleType);
}

TEST_CASE("zero-theta ewens is the cyclic sampler") {
    std::map<std::vector<int>, int> hits;
    oracles::forEachScript([&](oracles::ScriptRng& rng) {
        const Permutation p = sampleEwens(EwensParams{0.0, 4}, rng);
        CHECK(p.isSingleCycle());
        ++hits[p.word()];
    });
    CHECK(hits.size() == 6);
}

TEST_CASE("merge step enumerates its target set exactly once") {
    enumerateAll(4, [](const Permutation& s) {
        std::vector<Permutation> outputs;
        oracles::forEachScript([&](oracles::ScriptRng& rng) {
            outputs.push_back(applyT(s, rng));
        });
        std::sort(outputs.begin(), outputs.end());
        const std::vector<Permutation> targets = mergeTargets(s);
        CHECK(outputs == targets); // bijection: uniform by construction
    });
}

TEST_CASE("merge step output is always a single cycle") {
    PhiloxRng rng(99, 3);
    for (int rep = 0; rep < 200; ++rep) {
        const Permutation s = sampleEwens(EwensParams{1.5, 8}, rng);
        CHECK(applyT(s, rng).isSingleCycle());
    }
}

TEST_CASE("crp matches the exact ewens weights") {
    const double theta = 0.5;
    const int n = 4;
    const std::size_t samples = 200000;
    PhiloxRng rng(314159, 0);
    std::map<std::vector<int>, int> hits;
    for (std::size_t i = 0; i < samples; ++i) {
        ++hits[sampleEwens(EwensParams{theta, n}, rng).word()];
    }
    // P(sigma) = theta^(cycles-1) / ((theta+1)(theta+2)(theta+3))
    const double denom = 1.5 * 2.5 * 3.5;
    enumerateAll(n, [&](const Permutation& s) {
        const double p = std::pow(theta, s.numCycles() - 1) / denom;
        const auto it = hits.find(s.word());
        const double phat =
            it == hits.end() ? 0.0 : it->second / static_cast<double>(samples);
        checkFrequency(phat, p, samples);
    });
}

TEST_CASE("crp cycle counts match the bernoulli sum") {
    const double theta = 2.0;
    const int n = 6;
    const std::size_t samples = 200000;
    PhiloxRng rng(777, 1);
    std::vector<int> viaPerm(static_cast<std::size_t>(n) + 1, 0);
    std::vector<int> viaCount(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t i = 0; i < samples; ++i) {
        ++viaPerm[static_cast<std::size_t>(
            sampleEwens(EwensParams{theta, n}, rng).numCycles())];
        ++viaCount[static_cast<std::size_t>(
            sampleBernoulliCycleCount(EwensParams{theta, n}, rng))];
    }
    // exact law of the cycle count: convolution of Bernoulli(theta/(theta+i-1))
    std::vector<double> exact = {1.0};
    for (int i = 2; i <= n; ++i) {
        const double p = theta / (theta + i - 1);
        std::vector<double> next(exact.size() + 1, 0.0);
        for (std::size_t k = 0; k < exact.size(); ++k) {
            next[k] += exact[k] * (1.0 - p);
            next[k + 1] += exact[k] * p;
        }
        exact = std::move(next);
    }
    for (int k = 1; k <= n; ++k) {
        const double p = exact[static_cast<std::size_t>(k - 1)];
        checkFrequency(viaPerm[static_cast<std::size_t>(k)] / static_cast<double>(samples),
                       p, samples);
        checkFrequency(viaCount[static_cast<std::size_t>(k)] / static_cast<double>(samples),
                       p, samples);
    }
    PhiloxRng zero(1);
    CHECK(sampleBernoulliCycleCount(EwensParams{0.0, 9}, zero) == 1);
}

TEST_CASE("mixture branches are controlled by the weight") {
    PhiloxRng rng(11, 0);
    for (int rep = 0; rep < 50; ++rep) {
        const Permutation sure = sampleMixture(MixtureParams{1.0, 0.0, 9}, rng);
        CHECK(cycleType(sure) == std::vector<int>{6, 1, 1, 1});
        const Permutation never = sampleMixture(MixtureParams{1.0, 500.0, 9}, rng);
        CHECK(never.isSingleCycle());
    }
    int rare = 0;
    const int reps = 2000;
    for (int i = 0; i < reps; ++i) {
        rare += !sampleMixture(MixtureParams{1.0, 0.3, 9}, rng).isSingleCycle();
    }
    checkFrequency(rare / static_cast<double>(reps), std::exp(-0.9), reps);
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS((EwensParams{-0.5, 4}.validate()), DomainError);
    CHECK_THROWS_AS((EwensParams{1.0, 0}.validate()), DomainError);
    CHECK_THROWS_AS((MixtureParams{0.0, 1.0, 9}.validate()), DomainError);
    CHECK_THROWS_AS((MixtureParams{3.0, 1.0, 9}.validate()), DomainError);
    CHECK(MixtureParams{1.0, 1.0, 9}.fixedPoints() == 3);
}

TEST_CASE("law strings parse, print, and dispatch") {
    CHECK(SamplerSpec::parse("uniform").name() == "uniform");
    CHECK(SamplerSpec::parse("ewens:2.5").name() == "ewens:2.5");
    CHECK(SamplerSpec::parse("class:3,2").parts == std::vector<int>{3, 2});
    CHECK(SamplerSpec::parse("mixture:1.5,0.2").name() == "mixture:1.5,0.2");
    CHECK(SamplerSpec::parse("t(ewens:0.5)").name() == "t(ewens:0.5)");
    CHECK_THROWS_AS(SamplerSpec::parse("bogus"), DomainError);
    CHECK_THROWS_AS(SamplerSpec::parse("ewens:x"), DomainError);
    CHECK_THROWS_AS(SamplerSpec::parse("t(uniform"), DomainError);
    CHECK_THROWS_AS(SamplerSpec::parse("point:1,1"), NotABijection);

    PhiloxRng rng(4, 4);
    CHECK(sample(SamplerSpec::parse("point:3,1,2"), 3, rng).word() ==
          std::vector<int>{3, 1, 2});
    CHECK_THROWS_AS(sample(SamplerSpec::parse("point:3,1,2"), 4, rng), SizeMismatch);
    for (int rep = 0; rep < 100; ++rep) {
        CHECK(sample(SamplerSpec::parse("t(uniform)"), 5, rng).isSingleCycle());
    }
    for (int rep = 0; rep < 20; ++rep) {
        CHECK(cycleType(sample(SamplerSpec::parse("class:3"), 5, rng)) ==
              std::vector<int>{3, 1, 1});
    }
    CHECK_THROWS_AS(sample(SamplerSpec::parse("class:3,3"), 5, rng), InvalidCycleType);
}

TEST_SUITE_END();
