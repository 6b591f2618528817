#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracles {

int bruteLis(const std::vector<int>& w) {
    const std::size_t n = w.size();
    if (n == 0) return 0;
    std::vector<int> dp(n, 1);
    int best = 1;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (w[j] < w[i]) dp[i] = std::max(dp[i], dp[j] + 1);
        }
        best = std::max(best, dp[i]);
    }
    return best;
}

int bruteLds(const std::vector<int>& w) {
    std::vector<int> flipped(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) flipped[i] = -w[i];
    return bruteLis(flipped);
}

int zigzagLas(const std::vector<int>& w) {
    const std::size_t n = w.size();
    if (n == 0) return 0;
    // desc[i]: longest descent-first alternating subsequence ending at i whose
    // final step is a descent (even length, >= 2). asc[i]: same but ending on
    // an ascent (odd length, >= 3). 0 means "no such subsequence".
    std::vector<int> desc(n, 0), asc(n, 0);
    int best = 1;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (w[j] > w[i]) {
                desc[i] = std::max(desc[i], std::max(asc[j], 1) + 1);
            }
            if (w[j] < w[i] && desc[j] >= 2) {
                asc[i] = std::max(asc[i], desc[j] + 1);
            }
        }
        best = std::max({best, desc[i], asc[i]});
    }
    return best;
}

namespace {

bool isDescentFirstAlternating(const std::vector<int>& s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const bool wantDescent = (i % 2 == 0);
        if (wantDescent ? !(s[i] > s[i + 1]) : !(s[i] < s[i + 1])) return false;
    }
    return true;
}

} // namespace

int bruteLasAllSubsequences(const std::vector<int>& w) {
    const std::size_t n = w.size();
    int best = n == 0 ? 0 : 1;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> sub;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) sub.push_back(w[i]);
        }
        if (isDescentFirstAlternating(sub)) {
            best = std::max(best, static_cast<int>(sub.size()));
        }
    }
    return best;
}

namespace {

void chainSearch(const std::vector<int>& w, std::size_t i, int kept,
                 std::vector<int>& last, int& best) {
    best = std::max(best, kept);
    if (i == w.size()) return;
    if (kept + static_cast<int>(w.size() - i) <= best) return;
    for (std::size_t c = 0; c < last.size(); ++c) {
        if (last[c] < w[i]) {
            const int saved = last[c];
            last[c] = w[i];
            chainSearch(w, i + 1, kept + 1, last, best);
            last[c] = saved;
            if (saved == 0) break; // empty chains are interchangeable
        }
    }
    chainSearch(w, i + 1, kept, last, best);
}

} // namespace

int chainPartitionMax(const std::vector<int>& w, int k) {
    if (k <= 0) return 0;
    std::vector<int> last(static_cast<std::size_t>(k), 0);
    int best = 0;
    chainSearch(w, 0, 0, last, best);
    return best;
}

std::uint64_t eulerianNumber(int n, int k) {
    if (n < 1 || k < 0 || k > n - 1) return 0;
    std::vector<std::uint64_t> row = {1};
    for (int m = 2; m <= n; ++m) {
        std::vector<std::uint64_t> next(static_cast<std::size_t>(m), 0);
        for (int j = 0; j < m; ++j) {
            const std::uint64_t fromSame =
                j <= m - 2 ? (static_cast<std::uint64_t>(j) + 1) * row[static_cast<std::size_t>(j)]
                           : 0;
            const std::uint64_t fromPrev =
                j >= 1 ? static_cast<std::uint64_t>(m - j) * row[static_cast<std::size_t>(j - 1)]
                       : 0;
            next[static_cast<std::size_t>(j)] = fromSame + fromPrev;
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

namespace {

long double eulerCgf(long double t) {
    if (t == 0.0L) return 0.0L;
    // expm1(t)/t is positive for every nonzero t, so the log is direct.
    return std::log(std::expm1(t) / t);
}

} // namespace

double gridLegendreEuler(double x) {
    long double lo = -60.0L, hi = 60.0L;
    long double bestT = 0.0L, bestV = -1e30L;
    const int points = 10000;
    for (int round = 0; round < 3; ++round) {
        const long double step = (hi - lo) / points;
        bestV = -1e30L;
        for (int i = 0; i <= points; ++i) {
            const long double t = lo + step * i;
            const long double v = static_cast<long double>(x) * t - eulerCgf(t);
            if (v > bestV) {
                bestV = v;
                bestT = t;
            }
        }
        lo = bestT - 2 * step;
        hi = bestT + 2 * step;
    }
    if (bestV < 0.0L) bestV = 0.0L;
    return static_cast<double>(bestV);
}

} // namespace oracles
