#include "sharkswim/walk.hpp"

#include <stdexcept>

namespace sharkswim {

void ModelParams::validate() const {
    if (horizon < 1) throw std::invalid_argument("ModelParams: horizon must be >= 1");
    switch (mode) {
    case WalkMode::P_MODE:
        if (!(memory > 0.0) || !(memory < 1.0))
            throw std::invalid_argument("ModelParams: p must lie in (0,1)");
        StableSpec{alpha, dimension, 1.0}.validate();
        break;
    case WalkMode::Q_MODE:
        if (!(memory >= 0.0) || !(memory < 1.0))
            throw std::invalid_argument("ModelParams: q must lie in [0,1)");
        StableSpec{alpha, dimension, 1.0}.validate();
        break;
    case WalkMode::ERW:
        if (!(memory >= 0.0) || !(memory < 1.0))
            throw std::invalid_argument("ModelParams: q must lie in [0,1)");
        if (dimension != 1)
            throw std::invalid_argument("ModelParams: ERW is one-dimensional");
        if (erw_first_step != 0 && erw_first_step != 1 && erw_first_step != -1)
            throw std::invalid_argument("ModelParams: erw_first_step must be -1, 0 or +1");
        break;
    }
}

PModeEngine::PModeEngine(double alpha, double p, int dimension)
    : spec_{alpha, dimension, 1.0}, p_(p) {
    spec_.validate();
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("PModeEngine: p must lie in (0,1)");
    position_.assign(std::size_t(dimension), 0.0);
}

void PModeEngine::reset() {
    fresh_values_.clear();
    fresh_index_of_.clear();
    provenance_.clear();
    std::fill(position_.begin(), position_.end(), 0.0);
}

void PModeEngine::step(RngStream& rng) {
    int64_t k = size() + 1;
    int32_t fresh_idx;
    if (k == 1 || !rng.bernoulli(p_)) {
        fresh_idx = int32_t(fresh_count());
        std::size_t off = fresh_values_.size();
        fresh_values_.resize(off + std::size_t(dim()));
        sample_isotropic_stable(spec_, rng, {fresh_values_.data() + off, std::size_t(dim())});
        provenance_.push_back({StepTag::FRESH, 0});
    } else {
        int64_t j = 1 + int64_t(rng.uniform_below(uint64_t(k - 1)));
        fresh_idx = fresh_index_of_[std::size_t(j - 1)];
        provenance_.push_back({StepTag::REPEATED, j});
    }
    fresh_index_of_.push_back(fresh_idx);
    auto xi = fresh_value(fresh_idx);
    for (std::size_t c = 0; c < position_.size(); ++c) position_[c] += xi[c];
}

void PModeEngine::run_to(int64_t n, RngStream& rng) {
    while (size() < n) step(rng);
}

std::vector<int64_t> PModeEngine::ancestor_multiplicities() const {
    std::vector<int64_t> mult(std::size_t(fresh_count()), 0);
    for (int32_t f : fresh_index_of_) ++mult[std::size_t(f)];
    return mult;
}

Trajectory simulate_p_mode(const ModelParams& params, RngStream& rng) {
    if (params.mode != WalkMode::P_MODE)
        throw std::invalid_argument("simulate_p_mode: mode mismatch");
    params.validate();
    PModeEngine engine(params.alpha, params.memory, params.dimension);
    Trajectory traj;
    traj.dimension = params.dimension;
    int64_t n = params.horizon;
    traj.steps.reserve(std::size_t(n) * params.dimension);
    traj.positions.reserve(std::size_t(n) * params.dimension);
    for (int64_t k = 1; k <= n; ++k) {
        engine.step(rng);
        auto xi = engine.fresh_value(engine.fresh_index_of()[std::size_t(k - 1)]);
        traj.steps.insert(traj.steps.end(), xi.begin(), xi.end());
        auto pos = engine.position();
        traj.positions.insert(traj.positions.end(), pos.begin(), pos.end());
    }
    traj.provenance.assign(engine.provenance().begin(), engine.provenance().end());
    return traj;
}

namespace {

// Shared sign-chain dynamics for the q-formulation and the ERW: every step is
// first_sign * (a +-1 sign); step k >= 2 remembers a uniform past step and
// repeats (prob q) or flips (prob 1-q) it.
std::vector<int8_t> run_sign_chain(int64_t n, double q, RngStream& rng,
                                   std::vector<StepProvenance>& provenance) {
    std::vector<int8_t> signs;
    signs.reserve(std::size_t(n));
    signs.push_back(1);
    provenance.push_back({StepTag::FRESH, 0});
    for (int64_t k = 2; k <= n; ++k) {
        int64_t j = 1 + int64_t(rng.uniform_below(uint64_t(k - 1)));
        bool repeat = rng.bernoulli(q);
        signs.push_back(repeat ? signs[std::size_t(j - 1)]
                               : int8_t(-signs[std::size_t(j - 1)]));
        provenance.push_back({repeat ? StepTag::REPEATED : StepTag::FLIPPED, j});
    }
    return signs;
}

Trajectory materialize_sign_walk(std::span<const double> first_step,
                                 const std::vector<int8_t>& signs,
                                 std::vector<StepProvenance> provenance) {
    Trajectory traj;
    traj.dimension = int(first_step.size());
    std::vector<double> pos(first_step.size(), 0.0);
    for (int8_t s : signs) {
        for (std::size_t c = 0; c < first_step.size(); ++c) {
            double v = double(s) * first_step[c];
            traj.steps.push_back(v);
            pos[c] += v;
        }
        traj.positions.insert(traj.positions.end(), pos.begin(), pos.end());
    }
    traj.provenance = std::move(provenance);
    return traj;
}

} // namespace

Trajectory simulate_q_mode(const ModelParams& params, RngStream& rng) {
    if (params.mode != WalkMode::Q_MODE)
        throw std::invalid_argument("simulate_q_mode: mode mismatch");
    params.validate();
    StableSpec spec{params.alpha, params.dimension, 1.0};
    std::vector<double> xi1 = sample_isotropic_stable(spec, rng);
    std::vector<StepProvenance> prov;
    auto signs = run_sign_chain(params.horizon, params.memory, rng, prov);
    return materialize_sign_walk(xi1, signs, std::move(prov));
}

Trajectory simulate_erw(double q, int64_t n, RngStream& rng, int first_step) {
    ModelParams params{WalkMode::ERW, 2.0, q, 1, n, first_step};
    params.validate();
    double y1 = first_step != 0 ? double(first_step) : (rng.bernoulli(0.5) ? 1.0 : -1.0);
    std::vector<StepProvenance> prov;
    auto signs = run_sign_chain(n, q, rng, prov);
    double first[1] = {y1};
    return materialize_sign_walk({first, 1}, signs, std::move(prov));
}

std::vector<double> p_mode_final_position(const ModelParams& params, RngStream& rng) {
    if (params.mode != WalkMode::P_MODE)
        throw std::invalid_argument("p_mode_final_position: mode mismatch");
    params.validate();
    PModeEngine engine(params.alpha, params.memory, params.dimension);
    engine.run_to(params.horizon, rng);
    return {engine.position().begin(), engine.position().end()};
}

int64_t q_mode_displacement(const Trajectory& traj) {
    // Recover the sign chain from provenance; robust even if xi_1 ~ 0.
    std::vector<int8_t> signs;
    signs.reserve(std::size_t(traj.size()));
    int64_t total = 0;
    for (const auto& prov : traj.provenance) {
        int8_t s;
        switch (prov.tag) {
        case StepTag::FRESH: s = 1; break;
        case StepTag::REPEATED: s = signs[std::size_t(prov.source - 1)]; break;
        case StepTag::FLIPPED: s = int8_t(-signs[std::size_t(prov.source - 1)]); break;
        default: throw std::logic_error("q_mode_displacement: bad tag");
        }
        signs.push_back(s);
        total += s;
    }
    return total;
}

} // namespace sharkswim
