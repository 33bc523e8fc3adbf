#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace sharkswim {

enum class Regime { SUB, CRIT, SUPER };

// Phase classification at the alpha*p = 1 boundary, resolved to 1e-12 so an
// exactly rational p (e.g. "1/2" at alpha = 2) lands on CRIT, not a side.
Regime classify_regime(double alpha, double p);
std::string regime_name(Regime r);

struct TestVerdict {
    std::string name;
    bool pass = false;
    double statistic = 0.0;
    double threshold = 0.0;
    double p_value = -1.0; // < 0 when the test is a threshold check, not a p-value test
    std::string detail;
};

struct EcfRow {
    double t = 1.0;          // horizon multiplier for the row
    double theta_norm = 0.0;
    double observed_re = 0.0, se_re = 0.0;
    double observed_im = 0.0, se_im = 0.0;
    double target = 0.0;        // proof-consistent target exp(-K |theta|^alpha ...)
    double target_stated = 0.0; // the K^{1/alpha} exponent variant, printed alongside
};

struct RegimePerN {
    int64_t n = 0;
    double stat_mean = 0.0, stat_se = 0.0; // normalized cluster alpha-sum
    double stat_deviation = 0.0;           // |stat_mean/target - 1| (or abs when target=0)
    std::vector<EcfRow> ecf;
    double max_ecf_deviation = 0.0;
    // Supercritical extras; the gap columns describe the dyadic step n -> 2n.
    double coupling_gap_q90 = 0.0;
    double alpha_gap_q90 = 0.0;
    double median_norm = 0.0;
    int64_t heavy_outliers = 0; // paths that stayed a single cluster
};

struct RegimeReport {
    int schema = 1;
    std::string regime;
    double alpha = 0.0, p = 0.0;
    int dimension = 1;
    std::vector<int64_t> n_list;
    int64_t replicates = 0;
    std::uint64_t seed = 0;
    int workers = 0; // informational; results are worker-count invariant
    double target_constant = 0.0;
    std::string target_cf;        // proof-consistent CF target, as text
    std::string target_cf_stated; // alternative exponent candidate, as text
    std::vector<RegimePerN> per_n;
    std::vector<TestVerdict> verdicts;
    bool pass = false;
    std::map<std::string, std::string> config_echo; // full caller config
};

struct ExperimentConfig {
    double alpha = 2.0;
    double p = 0.5;
    int dimension = 1;
    std::vector<int64_t> n_list;
    int64_t replicates = 1000;
    std::uint64_t seed = 0;
    int workers = 0; // 0 = hardware concurrency
    double theta_lo = 0.1, theta_hi = 3.0;
    int theta_points = 8;
};

RegimeReport subcritical_experiment(const ExperimentConfig& cfg);
RegimeReport critical_experiment(const ExperimentConfig& cfg);
RegimeReport supercritical_experiment(const ExperimentConfig& cfg);

// Exact finite-n cross-engine identity: the empirical CF of the directly
// simulated walk position s*S_n must agree with the Rao-Blackwellized
// conditional CF computed from independent forests, at every theta, within
// z_limit combined standard errors. Valid in every regime at every n.
struct CfIdentityRow {
    double theta_norm = 0.0;
    double walk_re = 0.0, walk_se_re = 0.0;
    double walk_im = 0.0, walk_se_im = 0.0;
    double cond_mean = 0.0, cond_se = 0.0;
    double z_real = 0.0, z_imag = 0.0;
};

struct CfIdentityReport {
    double alpha = 0.0, p = 0.0;
    int dimension = 1;
    int64_t n = 0;
    int64_t replicates = 0;
    std::uint64_t seed = 0;
    double scaling = 1.0;
    double z_limit = 3.0;
    std::vector<CfIdentityRow> rows;
    double max_z = 0.0;
    bool pass = false;
};

CfIdentityReport cf_identity_check(const ExperimentConfig& cfg, int64_t n,
                                   double z_limit = 3.0);

// Regime-appropriate normalization applied to S_n before CF comparison:
// n^{-1/alpha} (sub), (n log n)^{-1/alpha} (crit), n^{-p} (super).
double regime_scaling(Regime regime, double alpha, double p, int64_t n);

std::string to_json_string(const RegimeReport& report);
void write_plot_csv(const RegimeReport& report, std::ostream& os);

} // namespace sharkswim
