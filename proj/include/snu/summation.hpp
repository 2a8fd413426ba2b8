#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace snu {

// Kahan compensated accumulator.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;

    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Recursive pairwise sum; deterministic for a given input order.
double pairwise_sum(std::span<const double> v);

}  // namespace snu
