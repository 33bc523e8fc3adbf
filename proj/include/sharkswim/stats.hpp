#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace sharkswim {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0; // sample std / sqrt(count)
    int64_t count = 0;
};

MeanSe mean_se(std::span<const double> xs);

// Empirical q-quantile (linear interpolation between order statistics).
double quantile(std::vector<double> xs, double q);

// Empirical characteristic function of d-dimensional samples over a grid of
// theta vectors, with per-theta standard errors of both components.
struct EcfReport {
    int dimension = 1;
    int64_t replicates = 0;
    std::vector<std::vector<double>> theta_grid;
    std::vector<double> ecf_real, ecf_imag;
    std::vector<double> se_real, se_imag;
};

EcfReport empirical_cf(std::span<const double> samples, int dimension,
                       const std::vector<std::vector<double>>& theta_grid);

// Conditional (Rao-Blackwellized) characteristic function of s * S_n given
// the cluster sizes: mean over replicates of exp(-|theta|^alpha s^alpha A_r)
// where A_r = sum of |c_i|^alpha for the r-th forest. Exact at every n.
MeanSe conditional_cf_from_clusters(std::span<const double> alpha_sums, double alpha,
                                    double theta_norm, double scaling);

// One-sample Kolmogorov-Smirnov against a continuous cdf.
struct KsResult {
    double statistic = 0.0;
    double p_value = 1.0;
};
KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf);
// Two-sample variant (conservative under ties).
KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b);

// Pearson chi-square of observed counts against expected probabilities.
// Requires every expected count >= 5 and matching totals.
struct ChiSquareResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int64_t dof = 0;
};
ChiSquareResult chi_square_test(std::span<const int64_t> observed,
                                std::span<const double> expected_probs);

// Bin a discrete law given by pmf(k) on {1,2,...}: cells {1},...,{K} plus a
// lumped tail chosen so each expected count is >= min_expected.
struct DiscreteBins {
    std::vector<double> probs; // cell probabilities, tail last
    int64_t cutoff = 0;        // last individually binned value
};
DiscreteBins lump_tail_bins(const std::function<double(int64_t)>& pmf, int64_t total_draws,
                            double min_expected = 5.0);
std::vector<int64_t> bin_counts(std::span<const int64_t> values, int64_t cutoff);

// Log-spaced grid of m magnitudes in [lo, hi] along the first axis, embedded
// in R^d (isotropy makes the direction irrelevant).
std::vector<std::vector<double>> default_theta_grid(int dimension, double lo = 0.1,
                                                    double hi = 3.0, int points = 8);

} // namespace sharkswim
