#pragma once

#include <cstdint>

namespace permld {

// Compensated (Kahan) accumulator for the long probability sums in the
// exact oracle and the tail reports.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

struct BinomialCi {
    double low = 0.0;
    double high = 1.0;
};

// Exact (Clopper-Pearson) two-sided binomial confidence interval.
BinomialCi clopperPearson(std::uint64_t hits, std::uint64_t total,
                          double confidence = 0.95);

} // namespace permld
