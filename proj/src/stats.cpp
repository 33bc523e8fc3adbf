#include "sharkswim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sharkswim/analytics.hpp"

namespace sharkswim {

MeanSe mean_se(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("mean_se: empty sample");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= double(xs.size());
    if (xs.size() == 1) return {mean, 0.0, 1};
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    double var = ss / double(xs.size() - 1);
    return {mean, std::sqrt(var / double(xs.size())), int64_t(xs.size())};
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw std::invalid_argument("quantile: empty sample");
    if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile: q outside [0,1]");
    std::sort(xs.begin(), xs.end());
    double pos = q * double(xs.size() - 1);
    std::size_t lo = std::size_t(pos);
    if (lo + 1 >= xs.size()) return xs.back();
    double frac = pos - double(lo);
    return xs[lo] * (1.0 - frac) + xs[lo + 1] * frac;
}

EcfReport empirical_cf(std::span<const double> samples, int dimension,
                       const std::vector<std::vector<double>>& theta_grid) {
    if (dimension < 1 || samples.size() % std::size_t(dimension) != 0)
        throw std::invalid_argument("empirical_cf: sample buffer not a multiple of d");
    int64_t R = int64_t(samples.size()) / dimension;
    if (R < 2) throw std::invalid_argument("empirical_cf: need at least 2 samples");
    EcfReport report;
    report.dimension = dimension;
    report.replicates = R;
    report.theta_grid = theta_grid;
    for (const auto& theta : theta_grid) {
        if (int(theta.size()) != dimension)
            throw std::invalid_argument("empirical_cf: theta dimension mismatch");
        double sc = 0.0, ss = 0.0, sc2 = 0.0, ss2 = 0.0;
        for (int64_t r = 0; r < R; ++r) {
            const double* x = samples.data() + std::size_t(r) * dimension;
            double dot = 0.0;
            for (int j = 0; j < dimension; ++j) dot += theta[std::size_t(j)] * x[j];
            double c = std::cos(dot), s = std::sin(dot);
            sc += c;
            ss += s;
            sc2 += c * c;
            ss2 += s * s;
        }
        double mc = sc / double(R), ms = ss / double(R);
        double vc = (sc2 - double(R) * mc * mc) / double(R - 1);
        double vs = (ss2 - double(R) * ms * ms) / double(R - 1);
        report.ecf_real.push_back(mc);
        report.ecf_imag.push_back(ms);
        report.se_real.push_back(std::sqrt(std::max(vc, 0.0) / double(R)));
        report.se_imag.push_back(std::sqrt(std::max(vs, 0.0) / double(R)));
    }
    return report;
}

MeanSe conditional_cf_from_clusters(std::span<const double> alpha_sums, double alpha,
                                    double theta_norm, double scaling) {
    if (alpha_sums.empty())
        throw std::invalid_argument("conditional_cf_from_clusters: empty input");
    double factor = std::pow(theta_norm, alpha) * std::pow(scaling, alpha);
    std::vector<double> vals;
    vals.reserve(alpha_sums.size());
    for (double a : alpha_sums) vals.push_back(std::exp(-factor * a));
    return mean_se(vals);
}

namespace {
double ks_p_value(double d, double n_eff) {
    // Stephens' small-sample adjustment of the Kolmogorov limit law.
    double sq = std::sqrt(n_eff);
    return analytics::kolmogorov_q((sq + 0.12 + 0.11 / sq) * d);
}
} // namespace

KsResult ks_test(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 20)
        throw std::invalid_argument("ks_test: need at least 20 samples");
    std::sort(samples.begin(), samples.end());
    double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        d = std::max(d, std::abs(double(i + 1) / n - f));
        d = std::max(d, std::abs(f - double(i) / n));
    }
    return {d, ks_p_value(d, n)};
}

KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.size() < 20 || b.size() < 20)
        throw std::invalid_argument("ks_test_two_sample: need at least 20 samples each");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(double(i) / double(a.size()) -
                                 double(j) / double(b.size())));
    }
    double n_eff = double(a.size()) * double(b.size()) /
                   double(a.size() + b.size());
    return {d, ks_p_value(d, n_eff)};
}

ChiSquareResult chi_square_test(std::span<const int64_t> observed,
                                std::span<const double> expected_probs) {
    if (observed.size() != expected_probs.size() || observed.size() < 2)
        throw std::invalid_argument("chi_square_test: need matching cells, >= 2");
    int64_t total = 0;
    for (int64_t o : observed) total += o;
    double psum = 0.0;
    for (double p : expected_probs) psum += p;
    if (std::abs(psum - 1.0) > 1e-9)
        throw std::invalid_argument("chi_square_test: expected probabilities must sum to 1");
    double stat = 0.0;
    for (std::size_t c = 0; c < observed.size(); ++c) {
        double e = expected_probs[c] * double(total);
        if (e < 5.0)
            throw std::invalid_argument("chi_square_test: expected cell count below 5");
        double diff = double(observed[c]) - e;
        stat += diff * diff / e;
    }
    int64_t dof = int64_t(observed.size()) - 1;
    return {stat, analytics::gamma_q(double(dof) / 2.0, stat / 2.0), dof};
}

DiscreteBins lump_tail_bins(const std::function<double(int64_t)>& pmf, int64_t total_draws,
                            double min_expected) {
    DiscreteBins bins;
    double tail = 1.0;
    int64_t k = 1;
    // Keep splitting off {k} while both the cell and the remaining tail stay
    // above the minimum expected count.
    while (true) {
        double pk = pmf(k);
        double rest = tail - pk;
        if (pk * double(total_draws) < min_expected ||
            rest * double(total_draws) < min_expected)
            break;
        bins.probs.push_back(pk);
        tail = rest;
        ++k;
        if (k > 1000000) break;
    }
    bins.cutoff = k - 1;
    if (bins.cutoff < 1)
        throw std::invalid_argument("lump_tail_bins: not enough mass to form cells");
    bins.probs.push_back(tail);
    return bins;
}

std::vector<int64_t> bin_counts(std::span<const int64_t> values, int64_t cutoff) {
    std::vector<int64_t> counts(std::size_t(cutoff) + 1, 0);
    for (int64_t v : values) {
        if (v < 1) throw std::invalid_argument("bin_counts: values must be >= 1");
        ++counts[std::size_t(std::min(v, cutoff + 1) - 1)];
    }
    return counts;
}

std::vector<std::vector<double>> default_theta_grid(int dimension, double lo, double hi,
                                                    int points) {
    if (dimension < 1 || points < 1 || !(lo > 0.0) || !(hi >= lo))
        throw std::invalid_argument("default_theta_grid: bad parameters");
    std::vector<std::vector<double>> grid;
    for (int i = 0; i < points; ++i) {
        double t = points == 1 ? 0.0 : double(i) / double(points - 1);
        double mag = lo * std::pow(hi / lo, t);
        std::vector<double> theta(std::size_t(dimension), 0.0);
        theta[0] = mag;
        grid.push_back(std::move(theta));
    }
    return grid;
}

} // namespace sharkswim
