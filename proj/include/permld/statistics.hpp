#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "permld/permutation.hpp"

namespace permld {

// Identifies one permutation statistic. The catalogue below is the set the
// Lipschitz certificates sweep; a few extra tags (the ascent-convention
// major index, the cycle count) are parseable and evaluable but stay out of
// the certified roster.
enum class StatTag {
    Lis,         // longest increasing subsequence
    Lds,         // longest decreasing subsequence
    RskRows,     // prefix sums of the first d RSK row lengths (vector value)
    Inv,         // inversions
    InvNorm,     // inversions / n
    Descents,    // #{i : w[i] > w[i+1]}
    Ascents,     // #{i : w[i] < w[i+1]}
    Peaks,       // interior strict peaks
    Valleys,     // interior strict valleys
    Exceedances, // #{x : s(x) > x}
    Maj,         // sum of descent positions
    MajNorm,     // maj / n
    Las,         // longest alternating subsequence (descent-first)
    MajPaper,    // sum of ascent positions (alternate convention)
    Cycles,      // number of cycles
};

struct StatisticId {
    StatTag tag = StatTag::Lis;
    int rows = 2; // only meaningful for RskRows (d >= 1)

    // Accepts "lis", "lds", "rsk-rows", "rsk-rows:3", "inv", "inv-norm",
    // "descents", "ascents", "peaks", "valleys", "exceedances", "maj",
    // "maj-norm", "las", "maj-paper", "cycles".
    // Throws UnknownStatistic otherwise.
    static StatisticId parse(const std::string& name);
    std::string name() const;
    bool isVector() const { return tag == StatTag::RskRows; }
    int dimension() const { return isVector() ? rows : 1; }

    friend bool operator==(const StatisticId&, const StatisticId&) = default;
};

// The 13 statistics covered by the certificate sweep (RskRows with d = 2).
std::vector<StatisticId> statisticCatalogue();

// Value of a statistic: scalar for most tags, a vector for RskRows. Ordering
// is lexicographic, which reduces to the numeric order for scalars.
struct StatValue {
    std::vector<double> values{0.0};
    bool vector = false;

    static StatValue scalar(double x) { return StatValue{{x}, false}; }
    double asScalar() const; // throws SizeMismatch when vector-valued

    friend bool operator==(const StatValue&, const StatValue&) = default;
    friend bool operator<(const StatValue& a, const StatValue& b) {
        return a.values < b.values;
    }
};

// Euclidean distance; requires equal dimension.
double distance(const StatValue& a, const StatValue& b);

int lis(const Permutation& s);
int lds(const Permutation& s);
// Full RSK shape (row lengths, weakly decreasing). First row length equals
// lis, number of rows equals lds.
std::vector<int> rskShape(const Permutation& s);
// First d row lengths, zero-padded to length d.
std::vector<int> rskRows(const Permutation& s, int d);
long long inversions(const Permutation& s);
int descents(const Permutation& s);
int ascents(const Permutation& s);
int peaks(const Permutation& s);
int valleys(const Permutation& s);
int exceedances(const Permutation& s);
// Descent convention by default; paperAscents switches to summing ascent
// positions instead.
long long majorIndex(const Permutation& s, bool paperAscents = false);
// Longest alternating subsequence, descent-first: 1 + sum of M_k where
// M_1 = [w1 > w2] and, for interior k, M_k = [peak or valley at k].
int las(const Permutation& s);

StatValue evaluate(const StatisticId& id, const Permutation& s);

// Certified per-transposition Lipschitz bound: the exact maximum of
// distance(f(s * t), f(s)) over all s in S_n and transpositions t, found by
// exhaustive sweep. knownBound carries the a-priori constant where one is
// part of the certified contract (inv <= 2n, descents/ascents <= 4,
// maj <= 4n, and their normalized forms).
struct LipschitzCertificate {
    StatisticId statistic;
    int n = 0;
    double supDelta = 0.0;
    std::optional<double> knownBound;
    // The witness pair attaining supDelta, for report output.
    std::vector<int> witnessWord;
    int witnessI = 0, witnessJ = 0;
};

LipschitzCertificate lipschitzSup(const StatisticId& id, int n, int threads = 1,
                                  std::optional<int> limitOverride = std::nullopt);

std::optional<double> knownLipschitzBound(const StatisticId& id, int n);

} // namespace permld
