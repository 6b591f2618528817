#pragma once

#include <functional>
#include <string>

#include "permld/errors.hpp"

namespace permld {

// Extended real used for rate-function values: rate functions are +inf off
// their effective domain, and log-probability bounds can be -inf.
struct ExtReal {
    enum class Kind { Finite, PosInf, NegInf };
    Kind kind = Kind::Finite;
    double value = 0.0;

    static ExtReal finite(double v) { return {Kind::Finite, v}; }
    static ExtReal posInf() { return {Kind::PosInf, 0.0}; }
    static ExtReal negInf() { return {Kind::NegInf, 0.0}; }

    bool isFinite() const { return kind == Kind::Finite; }
    // Throws DomainError when infinite.
    double finiteValue() const;
    std::string toString() const; // "inf", "-inf", or the number

    friend bool operator==(const ExtReal&, const ExtReal&) = default;
};

// Upper-tail rate for the longest increasing subsequence at scale sqrt(n),
// speed sqrt(n): 2x * arccosh(x/2) for x >= 2, +inf below (the upper tail
// is only a deviation beyond the 2*sqrt(n) limit).
ExtReal iLisHalf(double x);

// Lower-tail rate at scale sqrt(n), speed n, finite exactly on (0, 2]:
// -1 + x^2/4 + 2 ln(x/2) - (2 + x^2/2) ln(2x^2 / (4 + x^2)).
// Zero for x > 2 (no deviation), +inf for x <= 0. The formula itself
// vanishes at x = 2, so the function is continuous there.
ExtReal iLisOne(double x);

// Moderate-deviation rate (4/3) x^(3/2) for the upper tail between the two
// regimes above. Throws DomainError for x <= 0.
double moderateRate(double x);

// Cumulant generating function of Uniform(0,1): ln((e^t - 1)/t), K(0) = 0.
// Stable for all finite t (series near 0, asymptotics for |t| > 700).
double uniformCgf(double t);

// Rate for the descent count at scale n, speed n: the Legendre transform of
// uniformCgf. Finite exactly on (0, 1), zero at 1/2, symmetric about 1/2.
ExtReal iEuler(double x);

// Generic Legendre transform sup_t (x t - cgf(t)), computed by bracketing
// the concave objective and golden-section refinement. Throws
// ConvergenceFailure if the maximizer escapes every expanded bracket.
double legendreSup(const std::function<double(double)>& cgf, double x,
                   double bracketLo = -2.0, double bracketHi = 2.0);

// Bennett's bound on ln P(S - E S >= t) for a sum S of independent [0,1]
// variables with total variance proxy v = sum E X_i^2:
// t - (v + t) ln(1 + t/v). Requires v > 0 and t > 0.
double bennettLogBound(double v, double t);

// Certified bound on ln P(#cycles > eps * n^alpha) under Ewens(theta),
// via the Bernoulli decomposition of the cycle count plus Bennett's bound.
// theta = 0 gives -inf (the count is deterministically 1). Throws
// DomainError when eps * n^alpha does not exceed the mean cycle count
// (no bound applies there).
ExtReal ciBoundEwens(double theta, int n, double alpha, double epsilon);

} // namespace permld
