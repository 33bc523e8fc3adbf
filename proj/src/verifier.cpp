#include "sharkswim/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sharkswim/analytics.hpp"
#include "sharkswim/forest.hpp"
#include "sharkswim/parallel.hpp"
#include "sharkswim/stats.hpp"
#include "sharkswim/walk.hpp"

namespace sharkswim {

namespace {

constexpr double kZ99 = 2.5758293035489004; // Phi^{-1}(0.995)

RngStream stream_for(std::uint64_t seed, std::uint32_t block, int64_t r) {
    return RngStream(seed, (std::uint64_t(block) << 40) ^ std::uint64_t(r));
}

double norm2(std::span<const double> v) {
    double ss = 0.0;
    for (double x : v) ss += x * x;
    return std::sqrt(ss);
}

std::vector<std::vector<double>> grid_with_origin(const ExperimentConfig& cfg) {
    auto grid = default_theta_grid(cfg.dimension, cfg.theta_lo, cfg.theta_hi,
                                   cfg.theta_points);
    grid.insert(grid.begin(), std::vector<double>(std::size_t(cfg.dimension), 0.0));
    return grid;
}

void validate_common(const ExperimentConfig& cfg) {
    if (cfg.n_list.empty())
        throw std::invalid_argument("experiment: n_list must not be empty");
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i) {
        if (cfg.n_list[i] < 2)
            throw std::invalid_argument("experiment: every n must be >= 2");
        if (i > 0 && cfg.n_list[i] <= cfg.n_list[i - 1])
            throw std::invalid_argument("experiment: n_list must be strictly increasing");
    }
    if (cfg.replicates < 2)
        throw std::invalid_argument("experiment: need at least 2 replicates");
    if (cfg.dimension < 1) throw std::invalid_argument("experiment: dimension >= 1");
}

// Grows R independent paths, snapshotting position and cluster alpha-sum at
// each horizon. Snapshots land in slot r, so the result is identical for any
// worker count.
struct PathSnapshots {
    std::vector<double> positions;  // [(h*R + r)*d + j]
    std::vector<double> alpha_sums; // [h*R + r]
    std::vector<uint8_t> single_cluster; // [h*R + r]
};

PathSnapshots run_paths(const ExperimentConfig& cfg, std::uint32_t block,
                        const std::vector<int64_t>& horizons, bool with_spins) {
    PathSnapshots snap;
    std::size_t H = horizons.size(), R = std::size_t(cfg.replicates);
    std::size_t d = std::size_t(cfg.dimension);
    snap.positions.assign(with_spins ? H * R * d : 0, 0.0);
    snap.alpha_sums.assign(H * R, 0.0);
    snap.single_cluster.assign(H * R, 0);
    GrowingForest::Options opts;
    opts.alpha = cfg.alpha;
    opts.with_spins = with_spins;
    opts.spin_spec = StableSpec{cfg.alpha, cfg.dimension, 1.0};
    parallel_replicates(cfg.replicates, cfg.workers, [&](int64_t r) {
        auto rng = stream_for(cfg.seed, block, r);
        GrowingForest forest(cfg.p, opts);
        forest.reset();
        for (std::size_t h = 0; h < H; ++h) {
            forest.grow_to(horizons[h], rng);
            std::size_t slot = h * R + std::size_t(r);
            snap.alpha_sums[slot] = forest.alpha_sum();
            snap.single_cluster[slot] = forest.cluster_count() == 1 ? 1 : 0;
            if (with_spins) {
                auto pos = forest.position();
                std::copy(pos.begin(), pos.end(), snap.positions.begin() + slot * d);
            }
        }
    });
    return snap;
}

std::span<const double> snapshot_positions(const PathSnapshots& snap, std::size_t h,
                                           std::size_t R, std::size_t d) {
    return {snap.positions.data() + h * R * d, R * d};
}

struct EcfDeviation {
    double max_dev = 0.0;
    double mean_se = 0.0;
    int rows = 0;
};

// ECF rows for scaled positions against exp(-K * t * |theta|^alpha) with the
// stated-exponent variant exp(-K^{1/alpha} * t * |theta|^alpha) alongside.
EcfDeviation append_ecf_rows(std::vector<EcfRow>& rows, std::span<const double> positions,
                             const ExperimentConfig& cfg,
                             const std::vector<std::vector<double>>& grid, double scaling,
                             double t_exact, double K, EcfDeviation acc) {
    std::vector<double> scaled(positions.begin(), positions.end());
    for (double& x : scaled) x *= scaling;
    auto ecf = empirical_cf(scaled, cfg.dimension, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        EcfRow row;
        row.t = t_exact;
        row.theta_norm = norm2(grid[g]);
        row.observed_re = ecf.ecf_real[g];
        row.se_re = ecf.se_real[g];
        row.observed_im = ecf.ecf_imag[g];
        row.se_im = ecf.se_imag[g];
        double mag = std::pow(row.theta_norm, cfg.alpha) * t_exact;
        row.target = std::exp(-K * mag);
        row.target_stated = std::exp(-std::pow(K, 1.0 / cfg.alpha) * mag);
        rows.push_back(row);
        if (row.theta_norm > 0.0) {
            acc.max_dev = std::max(acc.max_dev,
                                   std::max(std::abs(row.observed_re - row.target),
                                            std::abs(row.observed_im)));
            acc.mean_se += row.se_re;
            ++acc.rows;
        }
    }
    return acc;
}

void finish_report(RegimeReport& report) {
    report.pass = true;
    for (const auto& v : report.verdicts) report.pass = report.pass && v.pass;
}

std::string cf_text(double K, double alpha, bool stated) {
    std::ostringstream os;
    os << "exp(-" << (stated ? "K^(1/alpha)" : "K") << " * t * |theta|^alpha), K="
       << K << ", alpha=" << alpha;
    return os.str();
}

} // namespace

Regime classify_regime(double alpha, double p) {
    StableSpec{alpha, 1, 1.0}.validate();
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("classify_regime: p must lie in (0,1)");
    double prod = alpha * p;
    if (std::abs(prod - 1.0) <= 1e-12) return Regime::CRIT;
    return prod < 1.0 ? Regime::SUB : Regime::SUPER;
}

std::string regime_name(Regime r) {
    switch (r) {
    case Regime::SUB: return "sub";
    case Regime::CRIT: return "crit";
    case Regime::SUPER: return "super";
    }
    return "?";
}

double regime_scaling(Regime regime, double alpha, double p, int64_t n) {
    switch (regime) {
    case Regime::SUB: return std::pow(double(n), -1.0 / alpha);
    case Regime::CRIT: return std::pow(double(n) * std::log(double(n)), -1.0 / alpha);
    case Regime::SUPER: return std::pow(double(n), -p);
    }
    return 1.0;
}

RegimeReport subcritical_experiment(const ExperimentConfig& cfg) {
    validate_common(cfg);
    if (classify_regime(cfg.alpha, cfg.p) != Regime::SUB)
        throw std::invalid_argument("subcritical_experiment: alpha*p must be < 1");
    double c = analytics::c_constant(cfg.alpha, cfg.p);

    RegimeReport report;
    report.regime = "sub";
    report.alpha = cfg.alpha;
    report.p = cfg.p;
    report.dimension = cfg.dimension;
    report.n_list = cfg.n_list;
    report.replicates = cfg.replicates;
    report.seed = cfg.seed;
    report.workers = cfg.workers;
    report.target_constant = c;
    report.target_cf = cf_text(c, cfg.alpha, false);
    report.target_cf_stated = cf_text(c, cfg.alpha, true);

    // One shared set of paths snapshotted at every floor(t*n): couples the
    // per-n statistics, so trend comparisons are paired.
    std::vector<int64_t> horizons;
    for (int64_t n : cfg.n_list)
        for (double t : {0.5, 1.0, 2.0})
            horizons.push_back(std::max<int64_t>(1, int64_t(t * double(n))));
    std::sort(horizons.begin(), horizons.end());
    horizons.erase(std::unique(horizons.begin(), horizons.end()), horizons.end());
    auto h_index = [&](int64_t m) {
        return std::size_t(std::lower_bound(horizons.begin(), horizons.end(), m) -
                           horizons.begin());
    };

    auto grid = grid_with_origin(cfg);
    auto snap = run_paths(cfg, 0, horizons, true);
    std::size_t R = std::size_t(cfg.replicates), d = std::size_t(cfg.dimension);

    std::vector<double> devs, sebars;
    for (int64_t n : cfg.n_list) {
        RegimePerN per;
        per.n = n;
        std::size_t hn = h_index(n);
        auto stats = mean_se({snap.alpha_sums.data() + hn * R, R});
        per.stat_mean = stats.mean / double(n);
        per.stat_se = stats.se / double(n);
        per.stat_deviation = std::abs(per.stat_mean / c - 1.0);
        for (int64_t s = 0; s < int64_t(R); ++s)
            per.heavy_outliers += snap.single_cluster[hn * R + std::size_t(s)];
        double scaling = regime_scaling(Regime::SUB, cfg.alpha, cfg.p, n);
        EcfDeviation acc;
        for (double t : {0.5, 1.0, 2.0}) {
            int64_t m = std::max<int64_t>(1, int64_t(t * double(n)));
            double t_exact = double(m) / double(n);
            acc = append_ecf_rows(per.ecf, snapshot_positions(snap, h_index(m), R, d),
                                  cfg, grid, scaling, t_exact, c, acc);
        }
        per.max_ecf_deviation = acc.max_dev;
        devs.push_back(acc.max_dev);
        sebars.push_back(acc.rows > 0 ? acc.mean_se / acc.rows : 0.0);
        report.per_n.push_back(std::move(per));
    }

    {
        // The statistic converges to c at rate n^{alpha p - 1} while its
        // replicate spread shrinks at the same rate, so closeness to the
        // constant is judged against the 99% band of a single replicate;
        // exactness of the engine is judged at full SE power against the
        // closed-form finite-n mean (alpha = 2).
        const auto& last = report.per_n.back();
        double sd = last.stat_se * std::sqrt(double(cfg.replicates));
        TestVerdict v;
        v.name = "alpha_sum_within_99_band_of_constant";
        v.statistic = std::abs(last.stat_mean - c);
        v.threshold = kZ99 * std::max(sd, 1e-300);
        v.pass = v.statistic <= v.threshold || (v.statistic == 0.0 && sd == 0.0);
        if (sd > 0.0) v.p_value = std::erfc(v.statistic / sd / std::sqrt(2.0));
        std::ostringstream os;
        os << "mean (1/n) sum|c|^alpha = " << last.stat_mean << " vs c = " << c
           << " at n = " << last.n << "; mean-CI view: |mean-c| = " << v.statistic
           << " vs " << kZ99 * last.stat_se << " (known transient, reported only)";
        v.detail = os.str();
        report.verdicts.push_back(std::move(v));
    }
    if (cfg.alpha == 2.0) {
        const auto& last = report.per_n.back();
        double exact =
            analytics::expected_cluster_square_sum(last.n, cfg.p) / double(last.n);
        TestVerdict v;
        v.name = "alpha_sum_matches_exact_finite_n_mean";
        v.statistic = std::abs(last.stat_mean - exact);
        v.threshold = kZ99 * last.stat_se;
        v.pass = v.statistic <= v.threshold;
        if (last.stat_se > 0.0)
            v.p_value = std::erfc(v.statistic / last.stat_se / std::sqrt(2.0));
        std::ostringstream os;
        os << "exact E[(1/n) sum|c|^2] = " << exact << " at n = " << last.n
           << "; transient to c is " << exact - c;
        v.detail = os.str();
        report.verdicts.push_back(std::move(v));
    }
    {
        TestVerdict v;
        v.name = "ecf_deviation_trend";
        if (report.per_n.size() < 2) {
            v.pass = true;
            v.detail = "single n; trend not applicable";
        } else {
            bool ok = devs.back() <= devs.front();
            for (std::size_t i = 0; i + 1 < devs.size(); ++i)
                ok = ok && devs[i + 1] <= devs[i] + 2.0 * (sebars[i] + sebars[i + 1]);
            v.pass = ok;
            v.statistic = devs.back();
            v.threshold = devs.front();
            v.detail = "max ECF deviation decreasing across n_list (up to noise)";
        }
        report.verdicts.push_back(std::move(v));
    }
    finish_report(report);
    return report;
}

RegimeReport critical_experiment(const ExperimentConfig& cfg) {
    validate_common(cfg);
    if (classify_regime(cfg.alpha, cfg.p) != Regime::CRIT)
        throw std::invalid_argument("critical_experiment: alpha*p must equal 1");
    double K = analytics::critical_constant(cfg.alpha, cfg.p);

    RegimeReport report;
    report.regime = "crit";
    report.alpha = cfg.alpha;
    report.p = cfg.p;
    report.dimension = cfg.dimension;
    report.n_list = cfg.n_list;
    report.replicates = cfg.replicates;
    report.seed = cfg.seed;
    report.workers = cfg.workers;
    report.target_constant = K;
    report.target_cf = cf_text(K, cfg.alpha, false);
    report.target_cf_stated = cf_text(K, cfg.alpha, true);

    auto grid = grid_with_origin(cfg);
    auto snap = run_paths(cfg, 0, cfg.n_list, true);
    std::size_t R = std::size_t(cfg.replicates), d = std::size_t(cfg.dimension);

    std::vector<double> devs, sebars;
    for (std::size_t h = 0; h < cfg.n_list.size(); ++h) {
        int64_t n = cfg.n_list[h];
        RegimePerN per;
        per.n = n;
        double denom = double(n) * std::log(double(n));
        auto stats = mean_se({snap.alpha_sums.data() + h * R, R});
        per.stat_mean = stats.mean / denom;
        per.stat_se = stats.se / denom;
        per.stat_deviation = std::abs(per.stat_mean / K - 1.0);
        for (std::size_t s = 0; s < R; ++s)
            per.heavy_outliers += snap.single_cluster[h * R + s];
        double scaling = regime_scaling(Regime::CRIT, cfg.alpha, cfg.p, n);
        EcfDeviation acc = append_ecf_rows(per.ecf, snapshot_positions(snap, h, R, d),
                                           cfg, grid, scaling, 1.0, K, {});
        per.max_ecf_deviation = acc.max_dev;
        devs.push_back(acc.max_dev);
        sebars.push_back(acc.rows > 0 ? acc.mean_se / acc.rows : 0.0);
        report.per_n.push_back(std::move(per));
    }

    {
        TestVerdict v;
        v.name = "alpha_sum_deviation_strictly_decreasing";
        if (report.per_n.size() < 2) {
            v.pass = true;
            v.detail = "single n; trend not applicable";
        } else {
            bool ok = true;
            for (std::size_t i = 0; i + 1 < report.per_n.size(); ++i)
                ok = ok && report.per_n[i + 1].stat_deviation <
                               report.per_n[i].stat_deviation;
            v.pass = ok;
            v.statistic = report.per_n.back().stat_deviation;
            v.threshold = report.per_n.front().stat_deviation;
            v.detail = "|mean/(1-p)Gamma(1+alpha) - 1| must fall at every step of n_list";
        }
        report.verdicts.push_back(std::move(v));
    }
    {
        TestVerdict v;
        v.name = "ecf_deviation_not_worsening";
        if (report.per_n.size() < 2) {
            v.pass = true;
            v.detail = "single n; trend not applicable";
        } else {
            v.statistic = devs.back();
            v.threshold = devs.front() + 3.0 * (sebars.front() + sebars.back());
            v.pass = v.statistic <= v.threshold;
            v.detail = "log-speed convergence: absolute closeness not required";
        }
        report.verdicts.push_back(std::move(v));
    }
    finish_report(report);
    return report;
}

RegimeReport supercritical_experiment(const ExperimentConfig& cfg) {
    validate_common(cfg);
    if (classify_regime(cfg.alpha, cfg.p) != Regime::SUPER)
        throw std::invalid_argument("supercritical_experiment: alpha*p must be > 1");
    if (cfg.n_list.size() < 2)
        throw std::invalid_argument("supercritical_experiment: need a dyadic n_list");
    for (std::size_t i = 0; i + 1 < cfg.n_list.size(); ++i)
        if (cfg.n_list[i + 1] != 2 * cfg.n_list[i])
            throw std::invalid_argument("supercritical_experiment: n_list must be dyadic");

    RegimeReport report;
    report.regime = "super";
    report.alpha = cfg.alpha;
    report.p = cfg.p;
    report.dimension = cfg.dimension;
    report.n_list = cfg.n_list;
    report.replicates = cfg.replicates;
    report.seed = cfg.seed;
    report.workers = cfg.workers;
    report.target_constant = 0.0; // the limit Z is path-dependent; no closed form
    report.target_cf = "self-coupling: conditional CF must stabilize across dyadic n";
    report.target_cf_stated = report.target_cf;

    auto grid = grid_with_origin(cfg);
    auto snap = run_paths(cfg, 0, cfg.n_list, true);
    std::size_t R = std::size_t(cfg.replicates), d = std::size_t(cfg.dimension);
    std::size_t H = cfg.n_list.size();
    double ap = cfg.alpha * cfg.p;

    // Conditional CF of n^{-p} S_n per (n, theta), with the last n as the
    // stabilization reference.
    std::vector<std::vector<MeanSe>> cf(H);
    for (std::size_t h = 0; h < H; ++h) {
        double s = regime_scaling(Regime::SUPER, cfg.alpha, cfg.p, cfg.n_list[h]);
        for (const auto& theta : grid)
            cf[h].push_back(conditional_cf_from_clusters(
                {snap.alpha_sums.data() + h * R, R}, cfg.alpha, norm2(theta), s));
    }

    std::vector<double> median_norms(H);
    for (std::size_t h = 0; h < H; ++h) {
        std::vector<double> norms(R);
        for (std::size_t r = 0; r < R; ++r)
            norms[r] = norm2({snap.positions.data() + (h * R + r) * d, d});
        median_norms[h] = quantile(norms, 0.5);
    }

    for (std::size_t h = 0; h < H; ++h) {
        int64_t n = cfg.n_list[h];
        RegimePerN per;
        per.n = n;
        double np = std::pow(double(n), -cfg.p);
        auto stats = mean_se({snap.alpha_sums.data() + h * R, R});
        double norm_alpha = std::pow(double(n), -ap);
        per.stat_mean = stats.mean * norm_alpha;
        per.stat_se = stats.se * norm_alpha;
        per.stat_deviation = 0.0;
        per.median_norm = median_norms[h] * np;
        for (std::size_t s = 0; s < R; ++s)
            per.heavy_outliers += snap.single_cluster[h * R + s];
        if (h + 1 < H) {
            int64_t n2 = cfg.n_list[h + 1];
            double np2 = std::pow(double(n2), -cfg.p);
            double na2 = std::pow(double(n2), -ap);
            std::vector<double> gaps(R), agaps(R);
            for (std::size_t r = 0; r < R; ++r) {
                double ss = 0.0;
                for (std::size_t j = 0; j < d; ++j) {
                    double diff = np * snap.positions[(h * R + r) * d + j] -
                                  np2 * snap.positions[((h + 1) * R + r) * d + j];
                    ss += diff * diff;
                }
                gaps[r] = std::sqrt(ss);
                agaps[r] = std::abs(norm_alpha * snap.alpha_sums[h * R + r] -
                                    na2 * snap.alpha_sums[(h + 1) * R + r]);
            }
            per.coupling_gap_q90 = quantile(gaps, 0.9);
            per.alpha_gap_q90 = quantile(agaps, 0.9);
        }
        for (std::size_t g = 0; g < grid.size(); ++g) {
            EcfRow row;
            row.theta_norm = norm2(grid[g]);
            row.observed_re = cf[h][g].mean;
            row.se_re = cf[h][g].se;
            row.target = cf[H - 1][g].mean; // stabilization reference
            row.target_stated = row.target;
            per.ecf.push_back(row);
            if (row.theta_norm > 0.0)
                per.max_ecf_deviation =
                    std::max(per.max_ecf_deviation, std::abs(row.observed_re - row.target));
        }
        report.per_n.push_back(std::move(per));
    }

    {
        TestVerdict v;
        v.name = "coupling_gap_q90_strictly_decreasing";
        bool ok = true;
        for (std::size_t h = 0; h + 2 < H; ++h)
            ok = ok && report.per_n[h + 1].coupling_gap_q90 < report.per_n[h].coupling_gap_q90;
        v.pass = ok;
        v.statistic = report.per_n[H - 2].coupling_gap_q90;
        v.threshold = report.per_n[0].coupling_gap_q90;
        v.detail = "0.9-quantile of |n^{-p}S_n - (2n)^{-p}S_2n| along shared paths";
        report.verdicts.push_back(std::move(v));
    }
    {
        TestVerdict v;
        v.name = "alpha_sum_gap_q90_strictly_decreasing";
        bool ok = true;
        for (std::size_t h = 0; h + 2 < H; ++h)
            ok = ok && report.per_n[h + 1].alpha_gap_q90 < report.per_n[h].alpha_gap_q90;
        v.pass = ok;
        v.statistic = report.per_n[H - 2].alpha_gap_q90;
        v.threshold = report.per_n[0].alpha_gap_q90;
        v.detail = "n^{-alpha p} sum|c|^alpha stabilizes along shared paths";
        report.verdicts.push_back(std::move(v));
    }
    {
        TestVerdict v;
        v.name = "median_norm_ratio_within_10pct";
        double ratio = median_norms[H - 1] / median_norms[H - 2];
        double target = std::pow(2.0, cfg.p);
        v.statistic = ratio / target;
        v.threshold = 0.10;
        v.pass = std::abs(v.statistic - 1.0) <= v.threshold;
        std::ostringstream os;
        os << "median |S_2n| / median |S_n| = " << ratio << ", target 2^p = " << target;
        v.detail = os.str();
        report.verdicts.push_back(std::move(v));
    }
    {
        TestVerdict v;
        v.name = "conditional_cf_stable";
        double max_z = 0.0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            double diff = std::abs(cf[H - 2][g].mean - cf[H - 1][g].mean);
            double se = std::sqrt(cf[H - 2][g].se * cf[H - 2][g].se +
                                  cf[H - 1][g].se * cf[H - 1][g].se);
            if (se > 0.0)
                max_z = std::max(max_z, diff / se);
            else if (diff > 0.0)
                max_z = std::max(max_z, 1e300);
        }
        v.statistic = max_z;
        // level 0.01 Bonferroni-corrected over the theta grid
        v.threshold = analytics::bonferroni_z(0.01, int(grid.size()));
        v.pass = max_z <= v.threshold;
        if (max_z < 1e300) v.p_value = std::erfc(max_z / std::sqrt(2.0));
        v.detail = "Rao-Blackwell CF of n^{-p}S_n across the last dyadic step";
        report.verdicts.push_back(std::move(v));
    }
    finish_report(report);
    return report;
}

CfIdentityReport cf_identity_check(const ExperimentConfig& cfg, int64_t n, double z_limit) {
    if (n < 1) throw std::invalid_argument("cf_identity_check: n must be >= 1");
    ExperimentConfig checked = cfg;
    checked.n_list = {std::max<int64_t>(n, 2)};
    validate_common(checked);
    Regime regime = classify_regime(cfg.alpha, cfg.p);
    double s = regime_scaling(regime, cfg.alpha, cfg.p, n);

    CfIdentityReport report;
    report.alpha = cfg.alpha;
    report.p = cfg.p;
    report.dimension = cfg.dimension;
    report.n = n;
    report.replicates = cfg.replicates;
    report.seed = cfg.seed;
    report.scaling = s;
    report.z_limit = z_limit;

    std::size_t R = std::size_t(cfg.replicates), d = std::size_t(cfg.dimension);

    // Walk side: direct p-mode simulation.
    std::vector<double> samples(R * d);
    ModelParams params{WalkMode::P_MODE, cfg.alpha, cfg.p, cfg.dimension, n};
    parallel_replicates(cfg.replicates, cfg.workers, [&](int64_t r) {
        auto rng = stream_for(cfg.seed, 0, r);
        auto pos = p_mode_final_position(params, rng);
        for (std::size_t j = 0; j < d; ++j) samples[std::size_t(r) * d + j] = s * pos[j];
    });

    // Forest side: independent cluster alpha-sums.
    std::vector<double> alpha_sums(R);
    GrowingForest::Options opts;
    opts.alpha = cfg.alpha;
    parallel_replicates(cfg.replicates, cfg.workers, [&](int64_t r) {
        auto rng = stream_for(cfg.seed, 1, r);
        GrowingForest forest(cfg.p, opts);
        forest.reset();
        forest.grow_to(n, rng);
        alpha_sums[std::size_t(r)] = forest.alpha_sum();
    });

    auto grid = grid_with_origin(cfg);
    auto ecf = empirical_cf(samples, cfg.dimension, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        CfIdentityRow row;
        row.theta_norm = norm2(grid[g]);
        row.walk_re = ecf.ecf_real[g];
        row.walk_se_re = ecf.se_real[g];
        row.walk_im = ecf.ecf_imag[g];
        row.walk_se_im = ecf.se_imag[g];
        auto cond = conditional_cf_from_clusters(alpha_sums, cfg.alpha, row.theta_norm, s);
        row.cond_mean = cond.mean;
        row.cond_se = cond.se;
        double se_re = std::sqrt(row.walk_se_re * row.walk_se_re + cond.se * cond.se);
        double diff_re = std::abs(row.walk_re - cond.mean);
        row.z_real = se_re > 0.0 ? diff_re / se_re : (diff_re > 0.0 ? 1e300 : 0.0);
        double diff_im = std::abs(row.walk_im);
        row.z_imag =
            row.walk_se_im > 0.0 ? diff_im / row.walk_se_im : (diff_im > 0.0 ? 1e300 : 0.0);
        report.max_z = std::max({report.max_z, row.z_real, row.z_imag});
        report.rows.push_back(row);
    }
    report.pass = report.max_z <= z_limit;
    return report;
}

namespace {

nlohmann::ordered_json verdict_json(const TestVerdict& v) {
    nlohmann::ordered_json j{{"name", v.name},
                             {"pass", v.pass},
                             {"statistic", v.statistic},
                             {"threshold", v.threshold},
                             {"detail", v.detail}};
    j["p_value"] = v.p_value < 0.0 ? nlohmann::ordered_json() : nlohmann::ordered_json(v.p_value);
    return j;
}

} // namespace

std::string to_json_string(const RegimeReport& report) {
    nlohmann::ordered_json j;
    j["schema"] = report.schema;
    j["regime"] = report.regime;
    j["alpha"] = report.alpha;
    j["p"] = report.p;
    j["dimension"] = report.dimension;
    j["n_list"] = report.n_list;
    j["replicates"] = report.replicates;
    j["seed"] = report.seed;
    // the worker count never appears in the file: reports are byte-identical
    // for any parallelism level
    j["stream_assignment"] =
        "replicate r uses RngStream(seed, (block<<40) ^ r); block 0 = forest paths";
    j["target_constant"] = report.target_constant;
    j["target_cf"] = report.target_cf;
    j["target_cf_stated"] = report.target_cf_stated;
    if (!report.config_echo.empty()) {
        nlohmann::ordered_json cfg;
        for (const auto& [k, v] : report.config_echo) cfg[k] = v;
        j["config"] = cfg;
    }
    nlohmann::ordered_json per_n = nlohmann::ordered_json::array();
    for (const auto& per : report.per_n) {
        nlohmann::ordered_json pj;
        pj["n"] = per.n;
        pj["stat_mean"] = per.stat_mean;
        pj["stat_se"] = per.stat_se;
        pj["stat_deviation"] = per.stat_deviation;
        pj["max_ecf_deviation"] = per.max_ecf_deviation;
        pj["coupling_gap_q90"] = per.coupling_gap_q90;
        pj["alpha_gap_q90"] = per.alpha_gap_q90;
        pj["median_norm"] = per.median_norm;
        pj["heavy_outliers"] = per.heavy_outliers;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : per.ecf) {
            rows.push_back({{"t", row.t},
                            {"theta_norm", row.theta_norm},
                            {"ecf_re", row.observed_re},
                            {"se_re", row.se_re},
                            {"ecf_im", row.observed_im},
                            {"se_im", row.se_im},
                            {"target", row.target},
                            {"target_stated", row.target_stated}});
        }
        pj["ecf"] = rows;
        per_n.push_back(pj);
    }
    j["per_n"] = per_n;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const auto& v : report.verdicts) verdicts.push_back(verdict_json(v));
    j["verdicts"] = verdicts;
    j["pass"] = report.pass;
    return j.dump(2);
}

void write_plot_csv(const RegimeReport& report, std::ostream& os) {
    os << "regime,alpha,p,dimension,replicates,seed,n,t,theta_norm,ecf_re,se_re,"
          "ecf_im,se_im,target,target_stated,stat_mean,stat_se,stat_deviation,"
          "coupling_gap_q90,alpha_gap_q90,median_norm,heavy_outliers\n";
    for (const auto& per : report.per_n) {
        for (const auto& row : per.ecf) {
            os << report.regime << ',' << report.alpha << ',' << report.p << ','
               << report.dimension << ',' << report.replicates << ',' << report.seed
               << ',' << per.n << ',' << row.t << ',' << row.theta_norm << ','
               << row.observed_re << ',' << row.se_re << ',' << row.observed_im << ','
               << row.se_im << ',' << row.target << ',' << row.target_stated << ','
               << per.stat_mean << ',' << per.stat_se << ',' << per.stat_deviation << ','
               << per.coupling_gap_q90 << ',' << per.alpha_gap_q90 << ','
               << per.median_norm << ',' << per.heavy_outliers << '\n';
        }
    }
}

} // namespace sharkswim
