#include "permld/numerics.hpp"

#include <boost/math/distributions/beta.hpp>

#include "permld/errors.hpp"

namespace permld {

BinomialCi clopperPearson(std::uint64_t hits, std::uint64_t total, double confidence) {
    if (total == 0) throw DomainError("clopperPearson needs total >= 1");
    if (hits > total) throw DomainError("clopperPearson needs hits <= total");
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw DomainError("clopperPearson needs confidence in (0,1)");
    }
    const double a = 1.0 - confidence;
    BinomialCi ci;
    const auto h = static_cast<double>(hits);
    const auto m = static_cast<double>(total);
    if (hits > 0) {
        boost::math::beta_distribution<double> lowerBeta(h, m - h + 1.0);
        ci.low = boost::math::quantile(lowerBeta, a / 2.0);
    }
    if (hits < total) {
        boost::math::beta_distribution<double> upperBeta(h + 1.0, m - h);
        ci.high = boost::math::quantile(upperBeta, 1.0 - a / 2.0);
    }
    return ci;
}

} // namespace permld
