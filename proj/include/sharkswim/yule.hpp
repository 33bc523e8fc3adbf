#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sharkswim/rng.hpp"

namespace sharkswim {

// Continuous-time Yule process with type mutation. Every individual gives
// birth at rate 1; a child clones its parent's type with probability p and
// founds a new type otherwise. Simulation is event-driven over birth events:
// with k alive the holding time is Exp(k) and the parent is uniform among
// the k living individuals.
class YuleState {
public:
    YuleState(int64_t n, double p, RngStream& rng);

    int64_t size() const { return n_; }
    double clone_prob() const { return p_; }

    // T(1) = 0 < T(2) < ... < T(n).
    double birth_time(int64_t k) const { return birth_times_[std::size_t(k - 1)]; }
    std::span<const double> birth_times() const { return birth_times_; }

    int64_t type_of(int64_t individual) const { return type_of_[std::size_t(individual - 1)] + 1; }
    int64_t num_types() const { return int64_t(type_counts_.size()); } // D(n)

    // Y_i(T(n)) indexed by type creation order (type 1 = founder's type).
    std::span<const int64_t> type_counts() const { return type_counts_; }
    // b_i, the birth time of the first individual of type i.
    std::span<const double> type_birth_times() const { return type_birth_; }

    // e^{-T(k)} * k, the Yule martingale along birth events.
    double martingale_value(int64_t k) const;

private:
    int64_t n_;
    double p_;
    std::vector<double> birth_times_;
    std::vector<int32_t> type_of_;     // individual -> type index (0-based)
    std::vector<int64_t> type_counts_; // type index -> population
    std::vector<double> type_birth_;   // type index -> b_i
};

// Population of a fresh rate-p Yule process started from one individual and
// run for duration t: the law of Y_i(t + b_i), geometric with parameter
// e^{-t p} on {1,2,...}.
int64_t type_population_after_birth(double p, double t, RngStream& rng);

} // namespace sharkswim
