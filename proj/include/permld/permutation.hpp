#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "permld/errors.hpp"

namespace permld {

// A permutation of {1, ..., n} stored in one-line notation: word()[i] is the
// image of i+1. Instances are immutable values; every public constructor
// validates bijectivity.
//
// Composition convention used throughout: (s * t)(x) = s(t(x)), i.e. t acts
// first. Under this convention multiplying s by the transposition (i j) on
// the right swaps positions i and j of the one-line word of s.
class Permutation {
public:
    // Takes the one-line word (1-based values). Throws NotABijection if the
    // word is empty or not a bijection of {1..n}.
    explicit Permutation(std::vector<int> word);

    static Permutation identity(int n);
    // The transposition (i j) in S_n, i != j.
    static Permutation transposition(int n, int i, int j);
    // Builds the word without validating it. Only for callers that construct
    // bijections by design (enumeration, samplers); checked in debug builds.
    static Permutation fromWordUnchecked(std::vector<int> word);

    int size() const { return static_cast<int>(word_.size()); }
    // Image of x (1-based).
    int operator()(int x) const { return word_[static_cast<std::size_t>(x) - 1]; }
    const std::vector<int>& word() const { return word_; }

    Permutation inverse() const;
    int numCycles() const;
    bool isSingleCycle() const { return numCycles() == 1; }
    bool isIdentity() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    // Lexicographic order on the one-line word; makes Permutation usable as
    // an ordered set/map key.
    friend bool operator<(const Permutation& a, const Permutation& b) {
        return a.word_ < b.word_;
    }

    std::string toString() const; // e.g. "[5,3,2,4,1]"

private:
    struct Unchecked {};
    Permutation(Unchecked, std::vector<int> word) : word_(std::move(word)) {}

    std::vector<int> word_;
};

// (s * t)(x) = s(t(x)). Throws SizeMismatch if sizes differ.
Permutation compose(const Permutation& s, const Permutation& t);
// rho * s * rho^-1.
Permutation conjugate(const Permutation& rho, const Permutation& s);

// Cycle decomposition in canonical form: each cycle starts at its smallest
// element, cycles sorted by that smallest element, fixed points included.
struct CycleDecomposition {
    std::vector<std::vector<int>> cycles;
    int numCycles() const { return static_cast<int>(cycles.size()); }
};

CycleDecomposition cycleDecomposition(const Permutation& s);
// Rebuilds the permutation; inverse of cycleDecomposition for canonical
// input, but accepts any disjoint cycle list covering a subset of {1..n}
// (missing elements become fixed points). Throws InvalidCycleType on
// repeated or out-of-range elements.
Permutation fromCycleDecomposition(int n, const CycleDecomposition& cd);
// Cycle lengths sorted in decreasing order.
std::vector<int> cycleType(const Permutation& s);

// Cap on every exhaustive sweep over S_n. Default 10; the environment
// variable PERMLD_EXHAUSTIVE_LIMIT overrides it (read once per process).
int exhaustiveLimit();

std::uint64_t factorial(int n); // n <= 20

// Streams all of S_n in lexicographic order of the one-line word.
// Throws LimitExceeded when n exceeds the exhaustive cap (or the explicit
// override, when given).
class PermutationEnumerator {
public:
    explicit PermutationEnumerator(int n, std::optional<int> limitOverride = std::nullopt);
    // nullopt once exhausted.
    std::optional<Permutation> next();

private:
    std::vector<int> word_;
    bool done_ = false;
    bool first_ = true;
};

// Convenience wrapper over PermutationEnumerator.
void enumerateAll(int n, const std::function<void(const Permutation&)>& fn,
                  std::optional<int> limitOverride = std::nullopt);

// Lexicographic rank of the one-line word, in [0, n!).
std::uint64_t rankOf(const Permutation& s);
// Inverse of rankOf. Throws DomainError if rank >= n!.
Permutation unrank(int n, std::uint64_t rank);

// The merge set A_s: all single-cycle permutations reachable from s as
// s * (i1 i2) * (i1 i3) * ... * (i1 im) with m = numCycles(s) and distinct
// points i1..im. Computed literally from that definition (enumerate ordered
// m-tuples, multiply out, keep the single-cycle results), so it can serve as
// ground truth for the faster representative-based construction used by the
// samplers. Returns a sorted, duplicate-free vector. For m == 1 this is {s}.
// Throws LimitExceeded when size exceeds the exhaustive cap.
std::vector<Permutation> mergeTargets(const Permutation& s,
                                      std::optional<int> limitOverride = std::nullopt);

// |A_s| = (product of cycle lengths) * (numCycles - 1)! for m >= 2 cycles,
// and 1 for a single cycle (the merge step fixes s).
std::uint64_t mergeTargetCount(const Permutation& s);

} // namespace permld
