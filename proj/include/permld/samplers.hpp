#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "permld/permutation.hpp"
#include "permld/rng.hpp"

namespace permld {

// All samplers are templated on the generator so tests can drive them with a
// scripted source and enumerate every branch. The generator contract is two
// calls: below(k) uniform on {0..k-1}, real01() uniform on [0,1).

struct EwensParams {
    double theta = 1.0;
    int n = 1;
    void validate() const {
        if (n < 1) throw DomainError("Ewens law needs n >= 1");
        if (!(theta >= 0.0) || !std::isfinite(theta)) {
            throw DomainError("Ewens law needs finite theta >= 0");
        }
    }
};

struct MixtureParams {
    double x = 0.5; // the rare branch plants floor(x * sqrt(n)) fixed points
    double c = 1.0; // rare-branch probability exp(-c * sqrt(n))
    int n = 1;
    int fixedPoints() const { return static_cast<int>(std::floor(x * std::sqrt(n))); }
    void validate() const {
        if (n < 1) throw DomainError("mixture law needs n >= 1");
        if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("mixture law needs x > 0");
        if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("mixture law needs c >= 0");
        if (fixedPoints() > n - 2) {
            throw DomainError("mixture law needs floor(x*sqrt(n)) <= n-2");
        }
    }
};

// Uniform on S_n (Fisher-Yates on the one-line word).
template <class Rng>
Permutation sampleUniform(int n, Rng& rng) {
    if (n < 1) throw DomainError("sampleUniform needs n >= 1");
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    for (int i = n - 1; i >= 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i) + 1));
        std::swap(w[static_cast<std::size_t>(i)], w[j]);
    }
    return Permutation::fromWordUnchecked(std::move(w));
}

// Uniform on the n-cycles (Sattolo's variant: the partner index stays
// strictly below i, which forces a single cycle).
template <class Rng>
Permutation sampleCyclic(int n, Rng& rng) {
    if (n < 1) throw DomainError("sampleCyclic needs n >= 1");
    std::vector<int> w(static_cast<std::size_t>(n));
    std::iota(w.begin(), w.end(), 1);
    for (int i = n - 1; i >= 1; --i) {
        const auto j = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(i)));
        std::swap(w[static_cast<std::size_t>(i)], w[j]);
    }
    return Permutation::fromWordUnchecked(std::move(w));
}

// Ewens(theta) via the Chinese-restaurant construction. Element i starts a
// new cycle with probability theta/(theta+i-1), otherwise it is spliced into
// the successor chain after a uniformly chosen earlier element; both moves
// have the probabilities that telescope to theta^(cycles-1) / prod(theta+i).
// theta = 0 delegates to sampleCyclic (the laws agree and it saves draws).
template <class Rng>
Permutation sampleEwens(const EwensParams& params, Rng& rng) {
    params.validate();
    const int n = params.n;
    if (params.theta == 0.0) return sampleCyclic(n, rng);
    std::vector<int> next(static_cast<std::size_t>(n) + 1);
    next[1] = 1;
    for (int i = 2; i <= n; ++i) {
        const double pNew = params.theta / (params.theta + i - 1);
        if (rng.real01() < pNew) {
            next[static_cast<std::size_t>(i)] = i;
        } else {
            const int j = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(i) - 1));
            next[static_cast<std::size_t>(i)] = next[static_cast<std::size_t>(j)];
            next[static_cast<std::size_t>(j)] = i;
        }
    }
    std::vector<int> w(static_cast<std::size_t>(n));
    for (int x = 1; x <= n; ++x) w[static_cast<std::size_t>(x) - 1] = next[static_cast<std::size_t>(x)];
    return Permutation::fromWordUnchecked(std::move(w));
}

// Uniform on the conjugacy class with the given cycle type (parts sum to n).
// A uniform arrangement cut into blocks of the prescribed lengths hits every
// class member the same number of ways, so the result is uniform.
template <class Rng>
Permutation sampleConjugacyClass(const std::vector<int>& parts, Rng& rng) {
    if (parts.empty()) throw InvalidCycleType("cycle type must be nonempty");
    long long n = 0;
    for (int p : parts) {
        if (p < 1) throw InvalidCycleType("cycle lengths must be >= 1");
        n += p;
    }
    if (n > 1'000'000'000) throw InvalidCycleType("cycle type too large");
    const Permutation arrangement = sampleUniform(static_cast<int>(n), rng);
    const auto& a = arrangement.word();
    std::vector<int> w(static_cast<std::size_t>(n));
    std::size_t pos = 0;
    for (int p : parts) {
        for (int t = 0; t < p; ++t) {
            const int from = a[pos + static_cast<std::size_t>(t)];
            const int to = a[pos + static_cast<std::size_t>((t + 1) % p)];
            w[static_cast<std::size_t>(from) - 1] = to;
        }
        pos += static_cast<std::size_t>(p);
    }
    return Permutation::fromWordUnchecked(std::move(w));
}

// One step of the cycle-merging operator: pick a representative uniformly in
// each cycle (cycles in canonical order), pick a uniform cyclic visiting
// order of the cycles, and splice the representatives into one loop. The
// output is uniform on the merge set A_s, so iterating from any
// conjugacy-invariant law lands on the uniform n-cycle law.
template <class Rng>
Permutation applyT(const Permutation& s, Rng& rng) {
    const CycleDecomposition cd = cycleDecomposition(s);
    const int m = cd.numCycles();
    if (m == 1) return s;

    std::vector<int> reps(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const auto& cycle = cd.cycles[static_cast<std::size_t>(k)];
        reps[static_cast<std::size_t>(k)] =
            cycle[static_cast<std::size_t>(rng.below(cycle.size()))];
    }

    // Visiting order = orbit of 1 under a uniform cyclic permutation of the
    // cycle indices.
    const Permutation pi = sampleCyclic(m, rng);
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(m));
    int idx = 1;
    do {
        seq.push_back(reps[static_cast<std::size_t>(idx) - 1]);
        idx = pi(idx);
    } while (idx != 1);

    // Result is s composed with the cycle seq[0] -> seq[1] -> ... -> seq[0].
    std::vector<int> w = s.word();
    for (int t = 0; t < m; ++t) {
        const int from = seq[static_cast<std::size_t>(t)];
        const int to = seq[static_cast<std::size_t>((t + 1) % m)];
        w[static_cast<std::size_t>(from) - 1] = s(to);
    }
    return Permutation::fromWordUnchecked(std::move(w));
}

// Two-component mixture: with probability exp(-c*sqrt(n)) a uniform element
// of the class with floor(x*sqrt(n)) fixed points and one long cycle,
// otherwise a uniform n-cycle. The rare-branch probability is formed in log
// space; below double underflow the branch is simply never taken (the law
// error is < 1e-300, far below anything observable).
template <class Rng>
Permutation sampleMixture(const MixtureParams& params, Rng& rng) {
    params.validate();
    const int n = params.n;
    const double logq = -params.c * std::sqrt(n);
    bool rare = false;
    if (logq >= std::log(1e-300)) {
        rare = rng.real01() < std::exp(logq);
    }
    if (!rare) return sampleCyclic(n, rng);
    const int k = params.fixedPoints();
    std::vector<int> parts(static_cast<std::size_t>(k), 1);
    parts.insert(parts.begin(), n - k);
    return sampleConjugacyClass(parts, rng);
}

// Cycle count of an Ewens(theta) draw without building the permutation:
// the count is the sum of independent Bernoulli(theta/(theta+i-1)).
template <class Rng>
int sampleBernoulliCycleCount(const EwensParams& params, Rng& rng) {
    params.validate();
    if (params.theta == 0.0) return 1;
    int count = 1; // i = 1 succeeds with probability 1
    for (int i = 2; i <= params.n; ++i) {
        count += rng.real01() < params.theta / (params.theta + i - 1);
    }
    return count;
}

// Parsed form of a law string:
//   uniform | cyclic | ewens:T | class:l1,l2,... | mixture:X,C |
//   point:w1,w2,... | t(SPEC)
// class types shorter than the requested n are padded with fixed points.
struct SamplerSpec {
    enum class Kind { Uniform, Cyclic, Ewens, Class, Mixture, Point, TWrap };

    Kind kind = Kind::Uniform;
    double theta = 1.0;                        // Ewens
    double x = 0.5, c = 1.0;                   // Mixture
    std::vector<int> parts;                    // Class
    std::vector<int> pointWord;                // Point
    std::shared_ptr<const SamplerSpec> inner;  // TWrap

    static SamplerSpec parse(const std::string& text); // throws DomainError
    std::string name() const;
};

// Resolves the class cycle type for size n: pads with fixed points, rejects
// types that overshoot.
std::vector<int> resolveClassParts(const std::vector<int>& parts, int n);

template <class Rng>
Permutation sample(const SamplerSpec& spec, int n, Rng& rng) {
    if (n < 1) throw DomainError("sample needs n >= 1");
    switch (spec.kind) {
        case SamplerSpec::Kind::Uniform: return sampleUniform(n, rng);
        case SamplerSpec::Kind::Cyclic: return sampleCyclic(n, rng);
        case SamplerSpec::Kind::Ewens: return sampleEwens({spec.theta, n}, rng);
        case SamplerSpec::Kind::Class:
            return sampleConjugacyClass(resolveClassParts(spec.parts, n), rng);
        case SamplerSpec::Kind::Mixture: return sampleMixture({spec.x, spec.c, n}, rng);
        case SamplerSpec::Kind::Point: {
            if (static_cast<int>(spec.pointWord.size()) != n) {
                throw SizeMismatch("point law has size " +
                                   std::to_string(spec.pointWord.size()) + ", wanted " +
                                   std::to_string(n));
            }
            return Permutation(spec.pointWord);
        }
        case SamplerSpec::Kind::TWrap: {
            const Permutation base = sample(*spec.inner, n, rng);
            return applyT(base, rng);
        }
    }
    throw DomainError("corrupt SamplerSpec");
}

} // namespace permld
