#include "sharkswim/yule.hpp"

#include <cmath>
#include <stdexcept>

namespace sharkswim {

YuleState::YuleState(int64_t n, double p, RngStream& rng) : n_(n), p_(p) {
    if (n < 1) throw std::invalid_argument("YuleState: n must be >= 1");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("YuleState: clone probability must lie in (0,1)");
    birth_times_.reserve(std::size_t(n));
    type_of_.reserve(std::size_t(n));
    birth_times_.push_back(0.0);
    type_of_.push_back(0);
    type_counts_.push_back(1);
    type_birth_.push_back(0.0);
    double t = 0.0;
    for (int64_t k = 1; k < n; ++k) {
        t += rng.exponential(double(k));
        int64_t parent = 1 + int64_t(rng.uniform_below(uint64_t(k)));
        bool clone = rng.bernoulli(p);
        int32_t type;
        if (clone) {
            type = type_of_[std::size_t(parent - 1)];
        } else {
            type = int32_t(type_counts_.size());
            type_counts_.push_back(0);
            type_birth_.push_back(t);
        }
        birth_times_.push_back(t);
        type_of_.push_back(type);
        ++type_counts_[std::size_t(type)];
    }
}

double YuleState::martingale_value(int64_t k) const {
    if (k < 1 || k > n_) throw std::invalid_argument("martingale_value: k out of range");
    return std::exp(-birth_time(k)) * double(k);
}

int64_t type_population_after_birth(double p, double t, RngStream& rng) {
    if (!(p > 0.0)) throw std::invalid_argument("type_population_after_birth: p must be > 0");
    if (t < 0.0) throw std::invalid_argument("type_population_after_birth: t must be >= 0");
    int64_t pop = 1;
    double clock = rng.exponential(p * double(pop));
    while (clock <= t) {
        ++pop;
        clock += rng.exponential(p * double(pop));
    }
    return pop;
}

} // namespace sharkswim
