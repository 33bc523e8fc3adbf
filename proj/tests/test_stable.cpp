#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "sharkswim/analytics.hpp"
#include "sharkswim/stable.hpp"
#include "sharkswim/stats.hpp"

using namespace sharkswim;

namespace {

std::vector<double> draw_1d(const StableSpec& spec, int64_t count, uint64_t seed) {
    RngStream rng(seed, 0);
    std::vector<double> xs(static_cast<std::size_t>(count));
    for (auto& x : xs) {
        double v;
        sample_isotropic_stable(spec, rng, {&v, 1});
        x = v;
    }
    return xs;
}

} // namespace

TEST_CASE("alpha=2 standard spec has variance 2 (CF exp(-theta^2))") {
    auto xs = draw_1d({2.0, 1, 1.0}, 100000, 101);
    double mean = 0.0, ss = 0.0;
    for (double x : xs) mean += x;
    mean /= double(xs.size());
    for (double x : xs) ss += (x - mean) * (x - mean);
    double var = ss / double(xs.size() - 1);
    // SE of the sample variance of a Gaussian: sigma^2 sqrt(2/(n-1)).
    double se = 2.0 * std::sqrt(2.0 / double(xs.size() - 1));
    CHECK(std::abs(var - 2.0) < 3.0 * se);
}

TEST_CASE("alpha=1 empirical CF at theta=1 is e^{-1}") {
    auto xs = draw_1d({1.0, 1, 1.0}, 100000, 102);
    std::vector<double> cosv;
    cosv.reserve(xs.size());
    for (double x : xs) cosv.push_back(std::cos(x));
    auto ms = mean_se(cosv);
    CHECK(std::abs(ms.mean - std::exp(-1.0)) < 3.0 * ms.se);
}

TEST_CASE("zero scale is the zero vector") {
    RngStream rng(7, 7);
    StableSpec spec{0.5, 3, 0.0};
    for (int i = 0; i < 100; ++i) {
        auto v = sample_isotropic_stable(spec, rng);
        for (double x : v) CHECK(x == 0.0);
    }
}

TEST_CASE("positive stable at alpha=0.5 matches the Levy(1/2) law") {
    RngStream rng(103, 0);
    std::vector<double> xs(100000);
    for (auto& x : xs) {
        x = sample_positive_stable(0.5, rng);
        REQUIRE(x > 0.0);
    }
    // Laplace transform exp(-sqrt(lambda)) is Levy with c = 1/2:
    // cdf F(x) = erfc(1/(2 sqrt(x))).
    auto ks = ks_test(xs, [](double x) { return std::erfc(0.5 / std::sqrt(x)); });
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("positive stable at alpha=0.9: empirical Laplace transform at 1") {
    RngStream rng(104, 0);
    std::vector<double> vals(100000);
    for (auto& v : vals) v = std::exp(-sample_positive_stable(0.9, rng));
    auto ms = mean_se(vals);
    CHECK(std::abs(ms.mean - std::exp(-1.0)) < 3.0 * ms.se);
}

TEST_CASE("positive stable rejects alpha outside (0,1)") {
    RngStream rng(1, 1);
    CHECK_THROWS_AS(sample_positive_stable(1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_positive_stable(0.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_mittag_leffler(1.2, rng), std::invalid_argument);
}

TEST_CASE("Mittag-Leffler moments match Gamma(q+1)/Gamma(pq+1)") {
    const double p = 0.5;
    RngStream rng(105, 0);
    std::vector<double> xs(100000);
    for (auto& x : xs) x = sample_mittag_leffler(p, rng);
    for (double q : {0.5, 1.0, 2.0}) {
        std::vector<double> powd;
        powd.reserve(xs.size());
        for (double x : xs) powd.push_back(std::pow(x, q));
        auto ms = mean_se(powd);
        double target = analytics::ml_moment(p, q);
        INFO("q = ", q, " target = ", target);
        CHECK(std::abs(ms.mean - target) < 3.0 * ms.se);
    }
    // q = 1 at p = 0.5 is 2/sqrt(pi); q = 2 is 2/Gamma(2) = 2.
    CHECK(analytics::ml_moment(0.5, 1.0) == doctest::Approx(1.1283791670955126).epsilon(1e-12));
    CHECK(analytics::ml_moment(0.5, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(analytics::ml_moment(0.3, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("stable_cf closed forms") {
    std::vector<double> zero{0.0};
    std::vector<double> one{1.0};
    CHECK(stable_cf(StableSpec{2.0, 1, 1.0}, zero) == doctest::Approx(1.0));
    CHECK(stable_cf(StableSpec{1.0, 1, 1.0}, one) == doctest::Approx(std::exp(-1.0)));
    CHECK(stable_cf(StableSpec{2.0, 1, 2.0}, one) == doctest::Approx(std::exp(-2.0)));
}

TEST_CASE("isotropy: angle of 2-d draws is uniform") {
    RngStream rng(106, 0);
    StableSpec spec{1.3, 2, 1.0};
    const int bins = 16;
    const int64_t N = 100000;
    std::vector<int64_t> counts(bins, 0);
    std::vector<double> v(2);
    for (int64_t i = 0; i < N; ++i) {
        sample_isotropic_stable(spec, rng, v);
        double angle = std::atan2(v[1], v[0]); // in (-pi, pi]
        int b = int((angle + M_PI) / (2.0 * M_PI) * bins);
        if (b == bins) b = bins - 1;
        ++counts[std::size_t(b)];
    }
    std::vector<double> probs(bins, 1.0 / bins);
    auto res = chi_square_test(counts, probs);
    CHECK(res.p_value > 0.01);
}

TEST_CASE("stability under addition: (X+Y)/2^(1/alpha) keeps the CF") {
    const double alpha = 1.5;
    RngStream rng(107, 0);
    StableSpec spec{alpha, 1, 1.0};
    const int64_t N = 100000;
    std::vector<double> sums(static_cast<std::size_t>(N));
    double scale = std::pow(2.0, -1.0 / alpha);
    for (auto& s : sums) {
        double x, y;
        sample_isotropic_stable(spec, rng, {&x, 1});
        sample_isotropic_stable(spec, rng, {&y, 1});
        s = (x + y) * scale;
    }
    auto grid = default_theta_grid(1, 0.5, 2.0, 3);
    auto ecf = empirical_cf(sums, 1, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double target = std::exp(-std::pow(grid[g][0], alpha));
        CHECK(std::abs(ecf.ecf_real[g] - target) < 3.0 * ecf.se_real[g]);
        CHECK(std::abs(ecf.ecf_imag[g]) < 3.0 * ecf.se_imag[g]);
    }
}

TEST_CASE("geometric sampler matches its pmf") {
    RngStream rng(108, 0);
    const double r = 0.4;
    const int64_t N = 100000;
    std::vector<int64_t> values(static_cast<std::size_t>(N));
    double sum = 0.0;
    for (auto& v : values) {
        v = int64_t(sample_geometric(r, rng));
        REQUIRE(v >= 1);
        sum += double(v);
    }
    CHECK(std::abs(sum / double(N) - 1.0 / r) < 0.05);
    auto bins = lump_tail_bins(
        [&](int64_t k) { return r * std::pow(1.0 - r, double(k - 1)); }, N);
    auto counts = bin_counts(values, bins.cutoff);
    auto res = chi_square_test(counts, bins.probs);
    CHECK(res.p_value > 0.01);
    CHECK(sample_geometric(1.0, rng) == 1);
}

TEST_CASE("beta(1,m) sampler matches the closed-form cdf") {
    RngStream rng(109, 0);
    const double m = 3.0;
    std::vector<double> xs(50000);
    for (auto& x : xs) x = sample_beta(1.0, m, rng);
    auto ks = ks_test(xs, [&](double x) { return 1.0 - std::pow(1.0 - x, m); });
    CHECK(ks.p_value > 0.01);
}

TEST_CASE("urn-drawn beta-binomial matches the closed-form pmf") {
    RngStream rng(112, 0);
    const int n = 6, m = 2;
    const int64_t N = 100000;
    std::vector<int64_t> counts(std::size_t(n) + 1, 0);
    for (int64_t i = 0; i < N; ++i)
        ++counts[std::size_t(sample_beta_binomial_urn(n, m, rng))];
    std::vector<double> probs;
    for (int i = 0; i <= n; ++i) probs.push_back(analytics::beta_binomial_pmf(n, m, i));
    auto res = chi_square_test(counts, probs);
    CHECK(res.p_value > 0.01);
}

TEST_CASE("spec validation") {
    CHECK_THROWS_AS((StableSpec{2.5, 1, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StableSpec{1.0, 0, 1.0}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StableSpec{1.0, 1, -1.0}.validate()), std::invalid_argument);
}
