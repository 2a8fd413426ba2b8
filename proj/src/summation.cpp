#include "snu/summation.hpp"

namespace snu {

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 16) {
        KahanSum acc;
        for (double x : v) acc.add(x);
        return acc.value();
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

}  // namespace snu
