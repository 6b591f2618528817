#include <doctest.h>

#include "oracles.hpp"
#include "permld/statistics.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

using namespace permld;

TEST_SUITE_BEGIN("statistics");

TEST_CASE("all statistics on a worked example") {
    const Permutation s({5, 3, 2, 4, 1});
    CHECK(lis(s) == 2);
    CHECK(lds(s) == 4);
    CHECK(inversions(s) == 8);
    CHECK(descents(s) == 3);
    CHECK(ascents(s) == 1);
    CHECK(peaks(s) == 1);
    CHECK(valleys(s) == 1);
    CHECK(exceedances(s) == 2);
    CHECK(majorIndex(s) == 7);
    CHECK(majorIndex(s, true) == 3);
    CHECK(las(s) == 4);
    CHECK(rskShape(s) == std::vector<int>{2, 1, 1, 1});
    CHECK(rskRows(s, 2) == std::vector<int>{2, 1});

    CHECK(lis(Permutation({3, 1, 4, 2, 5})) == 3);
    CHECK(las(Permutation::identity(6)) == 1);
    CHECK(las(Permutation({1})) == 1);
}

TEST_CASE("evaluate dispatches and normalizes") {
    const Permutation s({5, 3, 2, 4, 1});
    CHECK(evaluate(StatisticId{StatTag::Lis}, s).asScalar() == 2.0);
    CHECK(evaluate(StatisticId{StatTag::InvNorm}, s).asScalar() == doctest::Approx(8.0 / 5.0).epsilon(1e-15));
    CHECK(evaluate(StatisticId{StatTag::MajNorm}, s).asScalar() == doctest::Approx(7.0 / 5.0).epsilon(1e-15));
    CHECK(evaluate(StatisticId{StatTag::Cycles}, s).asScalar() == 3.0);
    const StatValue rows = evaluate(StatisticId{StatTag::RskRows, 2}, s);
    REQUIRE(rows.vector);
    CHECK(rows.values == std::vector<double>{2.0, 3.0});
}

TEST_CASE("statistic ids parse and print") {
    const StatisticId lisId = StatisticId::parse("lis");
    CHECK(lisId.tag == StatTag::Lis);
    CHECK(lisId.name() == "lis");
    const StatisticId rows = StatisticId::parse("rsk-rows:3");
    CHECK(rows.tag == StatTag::RskRows);
    CHECK(rows.rows == 3);
    CHECK(rows.name() == "rsk-rows:3");
    CHECK(rows.isVector());
    CHECK(rows.dimension() == 3);
    CHECK(StatisticId::parse("rsk-rows").rows == 2);
    CHECK(StatisticId::parse("maj-paper").tag == StatTag::MajPaper);
    CHECK_THROWS_AS(StatisticId::parse("lds2"), UnknownStatistic);
    CHECK_THROWS_AS(StatisticId::parse("rsk-rows:0"), UnknownStatistic);
    CHECK(statisticCatalogue().size() == 13);
    for (const StatisticId& id : statisticCatalogue()) {
        CHECK(StatisticId::parse(id.name()).name() == id.name());
    }
}

TEST_CASE("stat values compare and measure distance") {
    const StatValue a = StatValue::scalar(2.0);
    const StatValue b = StatValue::scalar(3.0);
    CHECK(a < b);
    CHECK(distance(a, b) == 1.0);
    StatValue v;
    v.values = {1.0, 2.0};
    v.vector = true;
    CHECK_THROWS_AS(v.asScalar(), SizeMismatch);
    StatValue w;
    w.values = {4.0, 6.0};
    w.vector = true;
    CHECK(distance(v, w) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(distance(a, v), SizeMismatch);
}

TEST_CASE("lis matches the quadratic DP and the RSK first row") {
    for (int n = 1; n <= 6; ++n) {
        enumerateAll(n, [](const Permutation& s) {
            const int fast = lis(s);
            CHECK(fast == oracles::bruteLis(s.word()));
            CHECK(lds(s) == oracles::bruteLds(s.word()));
            const std::vector<int> shape = rskShape(s);
            CHECK(fast == shape.front());
            CHECK(lds(s) == static_cast<int>(shape.size()));
        });
    }
}

TEST_CASE("reversing a word exchanges lis and lds") {
    enumerateAll(6, [](const Permutation& s) {
        std::vector<int> rev(s.word().rbegin(), s.word().rend());
        CHECK(lis(Permutation(rev)) == lds(s));
    });
}

TEST_CASE("las agrees with the zigzag DP and subsequence brute force") {
    enumerateAll(6, [](const Permutation& s) {
        const int viaFormula = las(s);
        CHECK(viaFormula == oracles::zigzagLas(s.word()));
        CHECK(viaFormula == oracles::bruteLasAllSubsequences(s.word()));
    });
    enumerateAll(7, [](const Permutation& s) {
        CHECK(las(s) == oracles::zigzagLas(s.word()));
    });
}

TEST_CASE("inversions match the pair count") {
    enumerateAll(6, [](const Permutation& s) {
        const std::vector<int>& w = s.word();
        int count = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            for (std::size_t j = i + 1; j < w.size(); ++j) {
                if (w[i] > w[j]) ++count;
            }
        }
        CHECK(inversions(s) == count);
    });
}

TEST_CASE("descent-family identities") {
    for (int n = 1; n <= 6; ++n) {
        enumerateAll(n, [&](const Permutation& s) {
            CHECK(descents(s) + ascents(s) == n - 1);
            CHECK(std::abs(peaks(s) - valleys(s)) <= 1);
            CHECK(majorIndex(s) + majorIndex(s, true) == n * (n - 1) / 2);
        });
    }
}

TEST_CASE("exhaustive one-swap sensitivity matches a direct search") {
    for (const StatTag tag : {StatTag::Lis, StatTag::Inv, StatTag::Descents}) {
        const StatisticId id{tag};
        for (int n = 4; n <= 5; ++n) {
            const LipschitzCertificate cert = lipschitzSup(id, n);
            double direct = 0.0;
            enumerateAll(n, [&](const Permutation& s) {
                for (int i = 1; i <= n; ++i) {
                    for (int j = i + 1; j <= n; ++j) {
                        const Permutation t = compose(s, Permutation::transposition(n, i, j));
                        direct = std::max(direct, distance(evaluate(id, t), evaluate(id, s)));
                    }
                }
            });
            CHECK(cert.supDelta == doctest::Approx(direct).epsilon(1e-12));
            // the stored witness reproduces the supremum
            const Permutation ws(cert.witnessWord);
            const Permutation wt = compose(ws, Permutation::transposition(n, cert.witnessI, cert.witnessJ));
            CHECK(distance(evaluate(id, wt), evaluate(id, ws)) ==
                  doctest::Approx(cert.supDelta).epsilon(1e-12));
        }
    }
}

TEST_CASE("known bounds cap the measured sensitivity") {
    const int n = 5;
    for (const StatisticId& id : statisticCatalogue()) {
        if (id.isVector()) continue;
        const LipschitzCertificate cert = lipschitzSup(id, n);
        if (cert.knownBound) {
            CHECK(cert.supDelta <= *cert.knownBound + 1e-12);
        }
    }
    CHECK(knownLipschitzBound(StatisticId{StatTag::Inv}, n) == 2.0 * n);
    CHECK(knownLipschitzBound(StatisticId{StatTag::Descents}, n) == 4.0);
    CHECK(knownLipschitzBound(StatisticId{StatTag::Ascents}, n) == 4.0);
    CHECK(knownLipschitzBound(StatisticId{StatTag::Maj}, n) == 4.0 * n);
    CHECK(knownLipschitzBound(StatisticId{StatTag::InvNorm}, n) == 2.0);
    CHECK(knownLipschitzBound(StatisticId{StatTag::MajNorm}, n) == 4.0);
}

TEST_CASE("inv sensitivity peaks at an end-to-end swap") {
    const LipschitzCertificate cert = lipschitzSup(StatisticId{StatTag::Inv}, 4);
    CHECK(cert.supDelta == 5.0);
}

TEST_CASE("sensitivity scan is thread-count independent") {
    const LipschitzCertificate one = lipschitzSup(StatisticId{StatTag::Lis}, 6, 1);
    const LipschitzCertificate three = lipschitzSup(StatisticId{StatTag::Lis}, 6, 3);
    CHECK(one.supDelta == three.supDelta);
    CHECK(one.witnessWord == three.witnessWord);
    CHECK(one.witnessI == three.witnessI);
    CHECK(one.witnessJ == three.witnessJ);
}

TEST_SUITE_END();
