#include "permld/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "permld/parallel.hpp"

namespace permld {

namespace {

// Longest strictly increasing subsequence of a distinct-valued word,
// patience style: tails[k] holds the least possible last value of an
// increasing subsequence of length k+1.
int lisOfWord(const std::vector<int>& w) {
    std::vector<int> tails;
    tails.reserve(w.size());
    for (int x : w) {
        auto it = std::lower_bound(tails.begin(), tails.end(), x);
        if (it == tails.end()) {
            tails.push_back(x);
        } else {
            *it = x;
        }
    }
    return static_cast<int>(tails.size());
}

struct Fenwick {
    explicit Fenwick(int n) : tree(static_cast<std::size_t>(n) + 1, 0) {}
    void add(int i) {
        for (; i < static_cast<int>(tree.size()); i += i & -i) ++tree[static_cast<std::size_t>(i)];
    }
    int prefix(int i) const {
        int s = 0;
        for (; i > 0; i -= i & -i) s += tree[static_cast<std::size_t>(i)];
        return s;
    }
    std::vector<int> tree;
};

} // namespace

StatisticId StatisticId::parse(const std::string& name) {
    if (name == "lis") return {StatTag::Lis};
    if (name == "lds") return {StatTag::Lds};
    if (name == "inv") return {StatTag::Inv};
    if (name == "inv-norm") return {StatTag::InvNorm};
    if (name == "descents") return {StatTag::Descents};
    if (name == "ascents") return {StatTag::Ascents};
    if (name == "peaks") return {StatTag::Peaks};
    if (name == "valleys") return {StatTag::Valleys};
    if (name == "exceedances") return {StatTag::Exceedances};
    if (name == "maj") return {StatTag::Maj};
    if (name == "maj-norm") return {StatTag::MajNorm};
    if (name == "maj-paper") return {StatTag::MajPaper};
    if (name == "las") return {StatTag::Las};
    if (name == "cycles") return {StatTag::Cycles};
    if (name == "rsk-rows") return {StatTag::RskRows, 2};
    if (name.rfind("rsk-rows:", 0) == 0) {
        const std::string suffix = name.substr(9);
        try {
            std::size_t used = 0;
            const int d = std::stoi(suffix, &used);
            if (used == suffix.size() && d >= 1) return {StatTag::RskRows, d};
        } catch (const std::exception&) {
        }
    }
    throw UnknownStatistic("unknown statistic '" + name + "'");
}

std::string StatisticId::name() const {
    switch (tag) {
        case StatTag::Lis: return "lis";
        case StatTag::Lds: return "lds";
        case StatTag::RskRows: return "rsk-rows:" + std::to_string(rows);
        case StatTag::Inv: return "inv";
        case StatTag::InvNorm: return "inv-norm";
        case StatTag::Descents: return "descents";
        case StatTag::Ascents: return "ascents";
        case StatTag::Peaks: return "peaks";
        case StatTag::Valleys: return "valleys";
        case StatTag::Exceedances: return "exceedances";
        case StatTag::Maj: return "maj";
        case StatTag::MajNorm: return "maj-norm";
        case StatTag::MajPaper: return "maj-paper";
        case StatTag::Las: return "las";
        case StatTag::Cycles: return "cycles";
    }
    throw UnknownStatistic("corrupt StatisticId");
}

std::vector<StatisticId> statisticCatalogue() {
    return {
        {StatTag::Lis},         {StatTag::Lds},     {StatTag::RskRows, 2},
        {StatTag::Inv},         {StatTag::InvNorm}, {StatTag::Descents},
        {StatTag::Ascents},     {StatTag::Peaks},   {StatTag::Valleys},
        {StatTag::Exceedances}, {StatTag::Maj},     {StatTag::MajNorm},
        {StatTag::Las},
    };
}

double StatValue::asScalar() const {
    if (vector || values.size() != 1) {
        throw SizeMismatch("vector-valued statistic used where a scalar is required");
    }
    return values[0];
}

double distance(const StatValue& a, const StatValue& b) {
    if (a.values.size() != b.values.size()) {
        throw SizeMismatch("StatValue dimensions differ");
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

int lis(const Permutation& s) { return lisOfWord(s.word()); }

int lds(const Permutation& s) {
    std::vector<int> flipped(s.word());
    const int n = s.size();
    for (int& x : flipped) x = n + 1 - x;
    return lisOfWord(flipped);
}

std::vector<int> rskShape(const Permutation& s) {
    // Row insertion; only the rows themselves are kept (no recording
    // tableau). Rows stay sorted, so each bump is a binary search.
    std::vector<std::vector<int>> rows;
    for (int x : s.word()) {
        int carry = x;
        for (std::size_t r = 0;; ++r) {
            if (r == rows.size()) {
                rows.push_back({carry});
                break;
            }
            auto& row = rows[r];
            auto it = std::upper_bound(row.begin(), row.end(), carry);
            if (it == row.end()) {
                row.push_back(carry);
                break;
            }
            std::swap(*it, carry);
        }
    }
    std::vector<int> shape;
    shape.reserve(rows.size());
    for (const auto& row : rows) shape.push_back(static_cast<int>(row.size()));
    return shape;
}

std::vector<int> rskRows(const Permutation& s, int d) {
    if (d < 1) throw DomainError("rskRows needs d >= 1");
    std::vector<int> shape = rskShape(s);
    shape.resize(static_cast<std::size_t>(d), 0);
    return shape;
}

long long inversions(const Permutation& s) {
    const int n = s.size();
    Fenwick bit(n);
    long long inv = 0;
    const auto& w = s.word();
    for (int i = 0; i < n; ++i) {
        // Values already inserted that are larger than w[i].
        inv += i - bit.prefix(w[static_cast<std::size_t>(i)]);
        bit.add(w[static_cast<std::size_t>(i)]);
    }
    return inv;
}

int descents(const Permutation& s) {
    const auto& w = s.word();
    int d = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) d += w[i] > w[i + 1];
    return d;
}

int ascents(const Permutation& s) {
    return s.size() - 1 - descents(s);
}

int peaks(const Permutation& s) {
    const auto& w = s.word();
    int p = 0;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) p += w[i - 1] < w[i] && w[i] > w[i + 1];
    return p;
}

int valleys(const Permutation& s) {
    const auto& w = s.word();
    int v = 0;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) v += w[i - 1] > w[i] && w[i] < w[i + 1];
    return v;
}

int exceedances(const Permutation& s) {
    int e = 0;
    for (int x = 1; x <= s.size(); ++x) e += s(x) > x;
    return e;
}

long long majorIndex(const Permutation& s, bool paperAscents) {
    const auto& w = s.word();
    long long m = 0;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        const bool counted = paperAscents ? (w[i] < w[i + 1]) : (w[i] > w[i + 1]);
        if (counted) m += static_cast<long long>(i) + 1;
    }
    return m;
}

int las(const Permutation& s) {
    const auto& w = s.word();
    const int n = s.size();
    if (n == 1) return 1;
    int sum = w[0] > w[1] ? 1 : 0; // M_1
    for (int k = 1; k + 1 < n; ++k) {
        const bool peak = w[static_cast<std::size_t>(k) - 1] < w[static_cast<std::size_t>(k)] &&
                          w[static_cast<std::size_t>(k)] > w[static_cast<std::size_t>(k) + 1];
        const bool valley = w[static_cast<std::size_t>(k) - 1] > w[static_cast<std::size_t>(k)] &&
                            w[static_cast<std::size_t>(k)] < w[static_cast<std::size_t>(k) + 1];
        sum += peak || valley;
    }
    return 1 + sum;
}

StatValue evaluate(const StatisticId& id, const Permutation& s) {
    switch (id.tag) {
        case StatTag::Lis: return StatValue::scalar(lis(s));
        case StatTag::Lds: return StatValue::scalar(lds(s));
        case StatTag::RskRows: {
            const std::vector<int> rows = rskRows(s, id.rows);
            StatValue v;
            v.vector = true;
            v.values.assign(rows.size(), 0.0);
            double running = 0.0;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                running += rows[i];
                v.values[i] = running;
            }
            return v;
        }
        case StatTag::Inv: return StatValue::scalar(static_cast<double>(inversions(s)));
        case StatTag::InvNorm:
            return StatValue::scalar(static_cast<double>(inversions(s)) / s.size());
        case StatTag::Descents: return StatValue::scalar(descents(s));
        case StatTag::Ascents: return StatValue::scalar(ascents(s));
        case StatTag::Peaks: return StatValue::scalar(peaks(s));
        case StatTag::Valleys: return StatValue::scalar(valleys(s));
        case StatTag::Exceedances: return StatValue::scalar(exceedances(s));
        case StatTag::Maj: return StatValue::scalar(static_cast<double>(majorIndex(s)));
        case StatTag::MajNorm:
            return StatValue::scalar(static_cast<double>(majorIndex(s)) / s.size());
        case StatTag::MajPaper:
            return StatValue::scalar(static_cast<double>(majorIndex(s, true)));
        case StatTag::Las: return StatValue::scalar(las(s));
        case StatTag::Cycles: return StatValue::scalar(s.numCycles());
    }
    throw UnknownStatistic("corrupt StatisticId");
}

std::optional<double> knownLipschitzBound(const StatisticId& id, int n) {
    switch (id.tag) {
        case StatTag::Inv: return 2.0 * n;
        case StatTag::InvNorm: return 2.0;
        case StatTag::Descents:
        case StatTag::Ascents: return 4.0;
        case StatTag::Maj:
        case StatTag::MajPaper: return 4.0 * n;
        case StatTag::MajNorm: return 4.0;
        default: return std::nullopt;
    }
}

LipschitzCertificate lipschitzSup(const StatisticId& id, int n, int threads,
                                  std::optional<int> limitOverride) {
    LipschitzCertificate cert;
    cert.statistic = id;
    cert.n = n;
    cert.knownBound = knownLipschitzBound(id, n);

    // Validates n against the exhaustive cap as a side effect.
    PermutationEnumerator gate(n, limitOverride);
    if (n == 1) {
        cert.witnessWord = {1};
        cert.witnessI = cert.witnessJ = 1;
        return cert;
    }

    const std::uint64_t total = factorial(n);
    const int shardCount = static_cast<int>(std::min<std::uint64_t>(64, total));
    const auto shards = makeShards(total, shardCount);

    struct ShardBest {
        double sup = -1.0;
        std::vector<int> word;
        int i = 0, j = 0;
        std::uint64_t rank = 0;
    };
    std::vector<ShardBest> best(static_cast<std::size_t>(shardCount));

    runShards(shardCount, threads, [&](int shard) {
        const auto [lo, hi] = shards[static_cast<std::size_t>(shard)];
        if (lo >= hi) return;
        ShardBest b;
        std::vector<int> w = unrank(n, lo).word();
        for (std::uint64_t r = lo; r < hi; ++r) {
            const StatValue base = evaluate(id, Permutation::fromWordUnchecked(w));
            for (int i = 0; i + 1 < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    // s * (i j) swaps positions i and j of the word.
                    std::swap(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(j)]);
                    const double d =
                        distance(evaluate(id, Permutation::fromWordUnchecked(w)), base);
                    std::swap(w[static_cast<std::size_t>(i)], w[static_cast<std::size_t>(j)]);
                    if (d > b.sup) {
                        b.sup = d;
                        b.word = w;
                        b.i = i + 1;
                        b.j = j + 1;
                        b.rank = r;
                    }
                }
            }
            std::next_permutation(w.begin(), w.end());
        }
        best[static_cast<std::size_t>(shard)] = std::move(b);
    });

    // Serial merge in shard order; ties keep the earliest witness, so the
    // certificate is identical for every thread count.
    ShardBest overall;
    for (const auto& b : best) {
        if (b.sup > overall.sup) overall = b;
    }
    cert.supDelta = std::max(0.0, overall.sup);
    cert.witnessWord = overall.word.empty() ? Permutation::identity(n).word() : overall.word;
    cert.witnessI = overall.i;
    cert.witnessJ = overall.j;
    return cert;
}

} // namespace permld
