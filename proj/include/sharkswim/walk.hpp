#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sharkswim/rng.hpp"
#include "sharkswim/stable.hpp"

namespace sharkswim {

enum class WalkMode { P_MODE, Q_MODE, ERW };

// One parameter set for a walk law. `memory` is p in (0,1) for P_MODE and
// q in [0,1) for Q_MODE / ERW. ERW ignores alpha/dimension (d = 1, +-1 steps).
struct ModelParams {
    WalkMode mode = WalkMode::P_MODE;
    double alpha = 2.0;
    double memory = 0.5;
    int dimension = 1;
    int64_t horizon = 1;
    // First ERW step: 0 = +-1 equiprobable, +1/-1 = pinned (used by the
    // coupling tests; the +-1 coin is the default).
    int erw_first_step = 0;

    void validate() const;
};

enum class StepTag : uint8_t { FRESH, REPEATED, FLIPPED };

struct StepProvenance {
    StepTag tag;
    int64_t source; // 1-based index of the remembered step; 0 for FRESH
};

// Materialized walk: steps, prefix-sum positions, provenance log.
struct Trajectory {
    int dimension = 1;
    std::vector<double> steps;     // n x d, row-major
    std::vector<double> positions; // n x d, row-major
    std::vector<StepProvenance> provenance;

    int64_t size() const { return int64_t(provenance.size()); }
    std::span<const double> step(int64_t k) const {
        return {steps.data() + std::size_t(k - 1) * dimension, std::size_t(dimension)};
    }
    std::span<const double> position(int64_t k) const {
        return {positions.data() + std::size_t(k - 1) * dimension, std::size_t(dimension)};
    }
};

// Memory-reinforced walk with stable fresh steps (the p-formulation): with
// probability p repeat a uniformly chosen past step, else draw a fresh
// standard isotropic alpha-stable step. The engine keeps one d-vector per
// FRESH step plus one integer per step; repeated steps never copy vectors.
class PModeEngine {
public:
    PModeEngine(double alpha, double p, int dimension);

    void reset();
    void step(RngStream& rng);
    void run_to(int64_t n, RngStream& rng);

    int64_t size() const { return int64_t(fresh_index_of_.size()); }
    int64_t fresh_count() const { return int64_t(fresh_values_.size()) / dim(); }
    int dim() const { return spec_.dimension; }
    std::span<const double> position() const { return position_; }

    // Per-step index of the FRESH ancestor whose value the step carries.
    std::span<const int32_t> fresh_index_of() const { return fresh_index_of_; }
    std::span<const StepProvenance> provenance() const { return provenance_; }
    std::span<const double> fresh_value(int32_t fresh_index) const {
        return {fresh_values_.data() + std::size_t(fresh_index) * dim(), std::size_t(dim())};
    }
    // Number of steps carrying each fresh value (cluster sizes of the
    // induced partition of steps by fresh ancestor).
    std::vector<int64_t> ancestor_multiplicities() const;

private:
    StableSpec spec_;
    double p_;
    std::vector<double> fresh_values_;     // one d-vector per FRESH step
    std::vector<int32_t> fresh_index_of_;  // per step
    std::vector<StepProvenance> provenance_;
    std::vector<double> position_;
};

Trajectory simulate_p_mode(const ModelParams& params, RngStream& rng);
Trajectory simulate_q_mode(const ModelParams& params, RngStream& rng);
Trajectory simulate_erw(double q, int64_t n, RngStream& rng, int first_step = 0);

// Final position only; O(#fresh * d) memory, no trajectory materialization.
std::vector<double> p_mode_final_position(const ModelParams& params, RngStream& rng);

// Signed displacement sum_k s_k with s_1 = +1 for the q-formulation (so that
// S_n = displacement * xi_1); used by the coupling tests and the CSV export.
int64_t q_mode_displacement(const Trajectory& traj);

} // namespace sharkswim
