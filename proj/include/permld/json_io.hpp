#pragma once

#include <cmath>
#include <cstdint>

#include <json.hpp>

#include "permld/exact_oracle.hpp"
#include "permld/montecarlo.hpp"
#include "permld/permutation.hpp"
#include "permld/rates.hpp"
#include "permld/statistics.hpp"

namespace permld {

using Json = nlohmann::json;

inline Json toJson(const Permutation& s) { return Json(s.word()); }

// One-line words arrive as JSON arrays of 1-based integers.
inline Permutation permutationFromJson(const Json& j) {
    if (!j.is_array()) throw NotABijection("expected a JSON array");
    std::vector<int> w;
    w.reserve(j.size());
    for (const auto& e : j) {
        if (!e.is_number_integer()) throw NotABijection("expected integer entries");
        w.push_back(e.get<int>());
    }
    return Permutation(std::move(w));
}

// Integral scalars print as JSON integers so statistic output stays clean.
inline Json numberJson(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15) {
        return Json(static_cast<std::int64_t>(v));
    }
    return Json(v);
}

inline Json toJson(const StatValue& v) {
    if (!v.vector) return numberJson(v.values.front());
    Json arr = Json::array();
    for (double x : v.values) arr.push_back(numberJson(x));
    return arr;
}

inline Json toJson(const ExtReal& v) {
    switch (v.kind) {
        case ExtReal::Kind::PosInf: return Json("inf");
        case ExtReal::Kind::NegInf: return Json("-inf");
        case ExtReal::Kind::Finite: break;
    }
    return Json(v.value);
}

inline Json toJson(const TailEstimate& est) {
    Json j{{"n", est.n},
           {"threshold", est.threshold},
           {"hits", est.hits},
           {"total", est.total},
           {"pHat", est.pHat},
           {"ciLow", est.ciLow},
           {"ciHigh", est.ciHigh}};
    if (est.empiricalRate) {
        j["empiricalRate"] = *est.empiricalRate;
    } else {
        j["empiricalRate"] = nullptr;
    }
    return j;
}

inline Json toJson(const VerificationReport& r) {
    return Json{{"check", r.checkName},
                {"detail", r.detail},
                {"n", r.n},
                {"maxDiscrepancy", r.maxDiscrepancy},
                {"tolerance", r.tolerance},
                {"passed", r.passed}};
}

inline Json toJson(const LipschitzCertificate& c) {
    Json j{{"statistic", c.statistic.name()},
           {"n", c.n},
           {"supDelta", c.supDelta}};
    if (c.knownBound) j["knownBound"] = *c.knownBound;
    j["witness"] = Json{{"word", c.witnessWord}, {"i", c.witnessI}, {"j", c.witnessJ}};
    return j;
}

inline Json toJson(const ExactDistribution& d) {
    Json support = Json::array();
    for (const auto& v : d.support) support.push_back(toJson(v));
    return Json{{"statistic", d.statistic.name()},
                {"law", d.law},
                {"n", d.n},
                {"support", support},
                {"probs", d.probs}};
}

inline Json toJson(const RateCurveRow& row) {
    Json j{{"estimate", toJson(row.estimate)}, {"theory", toJson(row.theory)}};
    if (row.gap) {
        j["gap"] = *row.gap;
    } else {
        j["gap"] = nullptr;
    }
    return j;
}

inline Json toJson(const CiDiagnosticRow& row) {
    Json j{{"estimate", toJson(row.estimate)}};
    if (row.ewensLogBound) {
        j["ewensLogBound"] = toJson(*row.ewensLogBound);
    } else {
        j["ewensLogBound"] = nullptr;
    }
    return j;
}

} // namespace permld
