#include "permld/permutation.hpp"

#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace permld {

namespace {

void validateWord(const std::vector<int>& word) {
    const int n = static_cast<int>(word.size());
    if (n == 0) throw NotABijection("permutation word must be nonempty");
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (int v : word) {
        if (v < 1 || v > n) {
            throw NotABijection("word entry " + std::to_string(v) + " outside 1.." +
                                std::to_string(n));
        }
        if (seen[static_cast<std::size_t>(v) - 1]) {
            throw NotABijection("word repeats entry " + std::to_string(v));
        }
        seen[static_cast<std::size_t>(v) - 1] = 1;
    }
}

} // namespace

Permutation::Permutation(std::vector<int> word) : word_(std::move(word)) {
    validateWord(word_);
}

Permutation Permutation::identity(int n) {
    if (n < 1) throw NotABijection("identity needs n >= 1");
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    return Permutation(Unchecked{}, std::move(w));
}

Permutation Permutation::transposition(int n, int i, int j) {
    if (i < 1 || i > n || j < 1 || j > n || i == j) {
        throw NotABijection("transposition needs distinct points in 1..n");
    }
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    std::swap(w[static_cast<std::size_t>(i) - 1], w[static_cast<std::size_t>(j) - 1]);
    return Permutation(Unchecked{}, std::move(w));
}

Permutation Permutation::fromWordUnchecked(std::vector<int> word) {
#ifndef NDEBUG
    validateWord(word);
#endif
    return Permutation(Unchecked{}, std::move(word));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(word_.size());
    for (int x = 1; x <= size(); ++x) {
        inv[static_cast<std::size_t>(word_[static_cast<std::size_t>(x) - 1]) - 1] = x;
    }
    return Permutation(Unchecked{}, std::move(inv));
}

int Permutation::numCycles() const {
    const int n = size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    int count = 0;
    for (int start = 1; start <= n; ++start) {
        if (seen[static_cast<std::size_t>(start) - 1]) continue;
        ++count;
        int x = start;
        while (!seen[static_cast<std::size_t>(x) - 1]) {
            seen[static_cast<std::size_t>(x) - 1] = 1;
            x = word_[static_cast<std::size_t>(x) - 1];
        }
    }
    return count;
}

bool Permutation::isIdentity() const {
    for (int x = 1; x <= size(); ++x) {
        if (word_[static_cast<std::size_t>(x) - 1] != x) return false;
    }
    return true;
}

std::string Permutation::toString() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < word_.size(); ++i) {
        if (i) os << ',';
        os << word_[i];
    }
    os << ']';
    return os.str();
}

Permutation compose(const Permutation& s, const Permutation& t) {
    if (s.size() != t.size()) {
        throw SizeMismatch("compose: sizes " + std::to_string(s.size()) + " vs " +
                           std::to_string(t.size()));
    }
    std::vector<int> w(static_cast<std::size_t>(s.size()));
    for (int x = 1; x <= s.size(); ++x) {
        w[static_cast<std::size_t>(x) - 1] = s(t(x));
    }
    return Permutation::fromWordUnchecked(std::move(w));
}

Permutation conjugate(const Permutation& rho, const Permutation& s) {
    return compose(rho, compose(s, rho.inverse()));
}

CycleDecomposition cycleDecomposition(const Permutation& s) {
    const int n = s.size();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    CycleDecomposition cd;
    for (int start = 1; start <= n; ++start) {
        if (seen[static_cast<std::size_t>(start) - 1]) continue;
        std::vector<int> cycle;
        int x = start;
        while (!seen[static_cast<std::size_t>(x) - 1]) {
            seen[static_cast<std::size_t>(x) - 1] = 1;
            cycle.push_back(x);
            x = s(x);
        }
        cd.cycles.push_back(std::move(cycle));
    }
    // Scanning from the smallest unvisited element already yields canonical
    // form: each cycle starts at its minimum, cycles ordered by minima.
    return cd;
}

Permutation fromCycleDecomposition(int n, const CycleDecomposition& cd) {
    if (n < 1) throw InvalidCycleType("need n >= 1");
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    for (const auto& cycle : cd.cycles) {
        for (std::size_t i = 0; i < cycle.size(); ++i) {
            const int from = cycle[i];
            const int to = cycle[(i + 1) % cycle.size()];
            if (from < 1 || from > n) {
                throw InvalidCycleType("cycle element " + std::to_string(from) +
                                       " outside 1.." + std::to_string(n));
            }
            if (seen[static_cast<std::size_t>(from) - 1]) {
                throw InvalidCycleType("element " + std::to_string(from) +
                                       " appears in two cycles");
            }
            seen[static_cast<std::size_t>(from) - 1] = 1;
            w[static_cast<std::size_t>(from) - 1] = to;
        }
    }
    return Permutation(std::move(w)); // validated: catches malformed cycles
}

std::vector<int> cycleType(const Permutation& s) {
    std::vector<int> type;
    for (const auto& c : cycleDecomposition(s).cycles) {
        type.push_back(static_cast<int>(c.size()));
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

int exhaustiveLimit() {
    static const int limit = [] {
        if (const char* env = std::getenv("PERMLD_EXHAUSTIVE_LIMIT")) {
            char* end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end && *end == '\0' && v >= 1 && v <= 20) return static_cast<int>(v);
        }
        return 10;
    }();
    return limit;
}

std::uint64_t factorial(int n) {
    if (n < 0) throw DomainError("factorial needs n >= 0");
    if (n > 20) throw LimitExceeded("factorial overflows uint64 beyond n = 20");
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

namespace {

void checkEnumerable(int n, std::optional<int> limitOverride) {
    const int cap = limitOverride.value_or(exhaustiveLimit());
    if (n < 1) throw DomainError("enumeration needs n >= 1");
    if (n > cap) {
        throw LimitExceeded("n = " + std::to_string(n) + " exceeds exhaustive cap " +
                            std::to_string(cap));
    }
}

} // namespace

PermutationEnumerator::PermutationEnumerator(int n, std::optional<int> limitOverride) {
    checkEnumerable(n, limitOverride);
    word_.resize(static_cast<std::size_t>(n));
    std::iota(word_.begin(), word_.end(), 1);
}

std::optional<Permutation> PermutationEnumerator::next() {
    if (done_) return std::nullopt;
    if (!first_ && !std::next_permutation(word_.begin(), word_.end())) {
        done_ = true;
        return std::nullopt;
    }
    first_ = false;
    return Permutation::fromWordUnchecked(word_);
}

void enumerateAll(int n, const std::function<void(const Permutation&)>& fn,
                  std::optional<int> limitOverride) {
    PermutationEnumerator en(n, limitOverride);
    while (auto p = en.next()) fn(*p);
}

std::uint64_t rankOf(const Permutation& s) {
    const int n = s.size();
    // Factorial number system; O(n^2) is fine at enumeration scales.
    std::uint64_t rank = 0;
    const auto& w = s.word();
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j) {
            if (w[static_cast<std::size_t>(j)] < w[static_cast<std::size_t>(i)]) ++smaller;
        }
        rank += static_cast<std::uint64_t>(smaller) * factorial(n - 1 - i);
    }
    return rank;
}

Permutation unrank(int n, std::uint64_t rank) {
    if (n < 1 || n > 20) throw DomainError("unrank needs 1 <= n <= 20");
    if (rank >= factorial(n)) throw DomainError("rank out of range");
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> w;
    w.reserve(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        const std::uint64_t f = factorial(i);
        const auto idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        w.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return Permutation::fromWordUnchecked(std::move(w));
}

std::uint64_t mergeTargetCount(const Permutation& s) {
    std::uint64_t prod = 1;
    int m = 0;
    for (const auto& c : cycleDecomposition(s).cycles) {
        prod *= static_cast<std::uint64_t>(c.size());
        ++m;
    }
    // A single cycle is a fixed point of the merge step: no transpositions
    // are applied, so the only target (and the only branch) is s itself.
    if (m == 1) return 1;
    return prod * factorial(m - 1);
}

std::vector<Permutation> mergeTargets(const Permutation& s,
                                      std::optional<int> limitOverride) {
    const int n = s.size();
    checkEnumerable(n, limitOverride);
    const int m = s.numCycles();
    if (m == 1) return {s};

    std::vector<Permutation> out;
    std::vector<int> tuple; // current ordered tuple (i1, ..., im)
    tuple.reserve(static_cast<std::size_t>(m));
    std::vector<char> used(static_cast<std::size_t>(n), 0);

    // Multiplies out s * (i1 i2) * (i1 i3) * ... * (i1 im) for the current
    // tuple and keeps the result when it is a single cycle.
    auto emit = [&] {
        Permutation prod = s;
        for (int k = 1; k < m; ++k) {
            prod = compose(prod, Permutation::transposition(n, tuple[0],
                            tuple[static_cast<std::size_t>(k)]));
        }
        if (prod.isSingleCycle()) out.push_back(std::move(prod));
    };

    std::function<void()> rec = [&] {
        if (static_cast<int>(tuple.size()) == m) {
            emit();
            return;
        }
        for (int i = 1; i <= n; ++i) {
            if (used[static_cast<std::size_t>(i) - 1]) continue;
            used[static_cast<std::size_t>(i) - 1] = 1;
            tuple.push_back(i);
            rec();
            tuple.pop_back();
            used[static_cast<std::size_t>(i) - 1] = 0;
        }
    };
    rec();

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace permld
