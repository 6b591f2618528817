#include "permld/rates.hpp"

#include <cmath>
#include <sstream>

namespace permld {

double ExtReal::finiteValue() const {
    if (kind != Kind::Finite) throw DomainError("ExtReal is not finite");
    return value;
}

std::string ExtReal::toString() const {
    switch (kind) {
        case Kind::PosInf: return "inf";
        case Kind::NegInf: return "-inf";
        case Kind::Finite: break;
    }
    std::ostringstream os;
    os.precision(17);
    os << value;
    return os.str();
}

ExtReal iLisHalf(double x) {
    if (std::isnan(x)) throw DomainError("iLisHalf: NaN input");
    if (x < 2.0) return ExtReal::posInf();
    return ExtReal::finite(2.0 * x * std::acosh(x / 2.0));
}

ExtReal iLisOne(double x) {
    if (std::isnan(x)) throw DomainError("iLisOne: NaN input");
    if (x <= 0.0) return ExtReal::posInf();
    if (x > 2.0) return ExtReal::finite(0.0);
    const double x2 = x * x;
    const double v = -1.0 + x2 / 4.0 + 2.0 * std::log(x / 2.0) -
                     (2.0 + x2 / 2.0) * std::log(2.0 * x2 / (4.0 + x2));
    return ExtReal::finite(v);
}

double moderateRate(double x) {
    if (!(x > 0.0)) throw DomainError("moderateRate needs x > 0");
    return (4.0 / 3.0) * x * std::sqrt(x);
}

double uniformCgf(double t) {
    if (t == 0.0) return 0.0;
    if (std::isnan(t)) throw DomainError("uniformCgf: NaN input");
    const double a = std::fabs(t);
    if (a < 1e-5) {
        // ln((e^t-1)/t) = t/2 + t^2/24 - t^4/2880 + ...
        return t / 2.0 + t * t / 24.0 - t * t * t * t / 2880.0;
    }
    if (t > 0.0) {
        if (t > 700.0) return t - std::log(t); // relative error below e^-700
        return std::log(std::expm1(t)) - std::log(t);
    }
    if (t < -700.0) return -std::log(-t);
    return std::log(-std::expm1(t)) - std::log(-t);
}

double legendreSup(const std::function<double(double)>& cgf, double x,
                   double bracketLo, double bracketHi) {
    const auto g = [&](double t) { return x * t - cgf(t); };

    // Expand (a, b, c) until the middle dominates both ends; concavity of g
    // then guarantees the maximizer sits inside [a, c].
    double a = bracketLo, c = bracketHi, b = 0.5 * (a + c);
    double ga = g(a), gb = g(b), gc = g(c);
    for (int iter = 0; gb < ga || gb < gc; ++iter) {
        if (iter > 400 || std::fabs(a) > 1e12 || std::fabs(c) > 1e12) {
            throw ConvergenceFailure("Legendre maximizer escaped every bracket");
        }
        if (ga >= gc) {
            c = b;
            gc = gb;
            b = a;
            gb = ga;
            a = b - 2.0 * (c - b);
            ga = g(a);
        } else {
            a = b;
            ga = gb;
            b = c;
            gb = gc;
            c = b + 2.0 * (b - a);
            gc = g(c);
        }
    }

    // Golden-section refinement.
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = c - kInvPhi * (c - a);
    double x2 = a + kInvPhi * (c - a);
    double f1 = g(x1), f2 = g(x2);
    for (int iter = 0; c - a > 1e-11 * (1.0 + std::fabs(a) + std::fabs(c)); ++iter) {
        if (iter > 500) throw ConvergenceFailure("golden-section failed to converge");
        if (f1 >= f2) {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - kInvPhi * (c - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (c - a);
            f2 = g(x2);
        }
    }
    // The sup includes t = 0 where the objective vanishes, so it is never
    // negative; clamp away -0 grade roundoff.
    return std::max(g(0.5 * (a + c)), 0.0);
}

ExtReal iEuler(double x) {
    if (std::isnan(x)) throw DomainError("iEuler: NaN input");
    if (x <= 0.0 || x >= 1.0) return ExtReal::posInf();
    return ExtReal::finite(legendreSup(uniformCgf, x));
}

double bennettLogBound(double v, double t) {
    if (!(v > 0.0)) throw DomainError("bennettLogBound needs v > 0");
    if (!(t > 0.0)) throw DomainError("bennettLogBound needs t > 0");
    return t - (v + t) * std::log1p(t / v);
}

ExtReal ciBoundEwens(double theta, int n, double alpha, double epsilon) {
    if (n < 1) throw DomainError("ciBoundEwens needs n >= 1");
    if (!(epsilon > 0.0)) throw DomainError("ciBoundEwens needs epsilon > 0");
    double v = 0.0;
    if (theta < 0.0 || !std::isfinite(theta)) {
        throw DomainError("ciBoundEwens needs finite theta >= 0");
    }
    if (theta == 0.0) {
        v = 1.0; // the cycle count is deterministically 1
    } else {
        for (int i = 1; i <= n; ++i) v += theta / (theta + i - 1);
    }
    const double t = epsilon * std::pow(n, alpha) - v;
    if (!(t > 0.0)) {
        throw DomainError("ciBoundEwens: threshold does not exceed the mean cycle count");
    }
    if (theta == 0.0) return ExtReal::negInf();
    return ExtReal::finite(bennettLogBound(v, t));
}

} // namespace permld
