#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "sharkswim/analytics.hpp"

using namespace sharkswim::analytics;

TEST_CASE("beta-binomial pmf closed cases") {
    CHECK(beta_binomial_pmf(1, 1, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(beta_binomial_pmf(1, 1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    // two draws from (1 black, 1 white), both black: (1/2)(2/3) = 1/3
    CHECK(beta_binomial_pmf(2, 1, 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(beta_binomial_pmf(5, 2, -1) == 0.0);
    CHECK(beta_binomial_pmf(5, 2, 6) == 0.0);
}

TEST_CASE("beta-binomial pmf normalizes") {
    for (auto [n, m] : {std::pair{1, 1}, {4, 1}, {7, 3}, {30, 9}}) {
        double total = 0.0;
        for (int i = 0; i <= n; ++i) total += beta_binomial_pmf(n, m, i);
        CHECK(std::abs(total - 1.0) < 1e-12);
    }
}

TEST_CASE("beta-binomial moments match the closed forms") {
    // Second moment of BetaBin(n-k, 1, k-1) as (n-k)(2(n-k)+k-1)/(k(k+1));
    // at n=3, k=2 this is 1/2.
    CHECK(beta_binomial_second_moment(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
    for (auto [n, m] : {std::pair{7, 3}, {12, 5}}) {
        double mean = 0.0, second = 0.0;
        for (int i = 0; i <= n; ++i) {
            double pi = beta_binomial_pmf(n, m, i);
            mean += i * pi;
            second += double(i) * i * pi;
        }
        CHECK(mean == doctest::Approx(beta_binomial_mean(n, m)).epsilon(1e-12));
        CHECK(second == doctest::Approx(beta_binomial_second_moment(n, m)).epsilon(1e-12));
        int k = m + 1, nn = n + k;
        double paper_form = double(nn - k) * (2.0 * (nn - k) + k - 1) / (double(k) * (k + 1));
        CHECK(second == doctest::Approx(paper_form).epsilon(1e-12));
    }
}

TEST_CASE("root cluster moments") {
    CHECK(root_cluster_moment(1, 0.3, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(root_cluster_moment(1, 0.3, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(root_cluster_moment(2, 0.5, 1) == doctest::Approx(1.5).epsilon(1e-12));
    // size 2 with prob 1/2, else 1: second moment (1/2)(4) + (1/2)(1) = 2.5
    CHECK(root_cluster_moment(2, 0.5, 2) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(root_cluster_moment(3, 0.5, 1) == doctest::Approx(1.875).epsilon(1e-12));
    CHECK_THROWS_AS(root_cluster_moment(2, 0.5, 3), std::invalid_argument);
}

TEST_CASE("gamma-ratio formulas stay accurate at huge n") {
    // Stirling: Gamma(n+p)/Gamma(n) = n^p (1 + p(p-1)/(2n) + O(1/n^2)); the
    // correction term at n = 1e9 is exact to ~1e-18.
    for (double p : {0.3, 0.5, 0.75}) {
        int64_t n = 1000000000;
        double ref = std::exp(p * std::log(double(n)) + p * (p - 1.0) / (2.0 * double(n))) /
                     std::tgamma(p + 1.0);
        double got = root_cluster_moment(n, p, 1);
        CHECK(std::abs(got / ref - 1.0) < 1e-10);
    }
}

TEST_CASE("Mittag-Leffler moments") {
    CHECK(ml_moment(0.7, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ml_moment(0.5, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(ml_moment(0.5, 1.0) == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("limit cluster moments and the supercritical series") {
    CHECK(xi_moment(2, 0.3, 0.0) == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(xi_moment(2, 0.5, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(xi_moment(1, 0.5, 2.0) == doctest::Approx(ml_moment(0.5, 2.0)).epsilon(1e-12));

    // alpha p = 1.5 > 1: partial sums are Cauchy; tail term ~ i^{-1.5}.
    const double p = 0.75, alpha = 2.0;
    double term = xi_moment(2, p, alpha); // recurrence below advances the Gamma ratio
    double sum = ml_moment(p, alpha) + term;
    double increment_at_1e6 = 0.0;
    for (int64_t i = 3; i <= 1000000; ++i) {
        term *= double(i - 1) / (alpha * p + double(i - 1));
        sum += term;
        if (i == 1000000) increment_at_1e6 = term;
    }
    CHECK(increment_at_1e6 < 1e-6);
    CHECK(std::abs(term - xi_moment(1000000, p, alpha)) < 1e-15);
    CHECK(sum > 0.0);
}

TEST_CASE("geometric alpha moments") {
    CHECK(geometric_alpha_moment(1.0, 1.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(geometric_alpha_moment(0.5, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(geometric_alpha_moment(0.5, 2.0) == doctest::Approx(6.0).epsilon(1e-12));
    // fractional alpha against a brute-force partial sum
    const double r = 0.3, alpha = 1.5;
    double brute = 0.0;
    for (int64_t k = 1; k <= 2000; ++k)
        brute += std::pow(double(k), alpha) * std::pow(1.0 - r, double(k - 1)) * r;
    CHECK(geometric_alpha_moment(r, alpha) == doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("geometric moment growth bound") {
    // For alpha <= 1, Jensen gives E[G^alpha] <= (E G)^alpha = r^{-alpha}.
    // For alpha > 1 that direction reverses; the asymptotically tight bound
    // carries the Gamma(1+alpha) factor of the exponential limit of r*G.
    for (double alpha : {0.4, 0.8, 1.0}) {
        for (double r : {0.05, 0.2, 0.5, 0.9}) {
            CHECK(geometric_alpha_moment(r, alpha) <=
                  std::pow(1.0 / r, alpha) * (1.0 + 1e-12));
        }
    }
    for (double alpha : {1.3, 1.8, 2.0}) {
        for (double r : {0.05, 0.2, 0.5, 0.9}) {
            CHECK(geometric_alpha_moment(r, alpha) <=
                  std::tgamma(1.0 + alpha) * std::pow(1.0 / r, alpha) * (1.0 + 1e-12));
        }
    }
}

namespace {

// Independent route for c(alpha,p): substituting u = (x/(1-p))^p and swapping
// sum and integral (all terms positive) gives
//   c = ((1-p)/p) Gamma(1/p + 1) sum_k k^alpha Gamma(k)/Gamma(k + 1/p + 1).
// The Gamma ratio advances by k/(k + 1/p + 1); the truncated tail is closed
// by an integral of the k^{alpha - 1/p - 1} asymptote.
double c_constant_series(double alpha, double p) {
    double c0 = 1.0 / p + 1.0;
    double ratio = 1.0 / std::tgamma(1.0 + c0); // Gamma(1)/Gamma(1 + c0)
    double sum = 0.0;
    const int64_t K = 4000000;
    for (int64_t k = 1; k <= K; ++k) {
        sum += std::pow(double(k), alpha) * ratio;
        ratio *= double(k) / (double(k) + c0);
    }
    double decay = c0 - alpha - 1.0; // > 0 iff alpha p < 1
    double tail = std::pow(double(K) + 0.5, -decay) / decay;
    return (1.0 - p) / p * std::tgamma(c0) * (sum + tail);
}

} // namespace

TEST_CASE("c constant closed forms and quadrature anchors") {
    CHECK(c_constant(1.0, 0.3) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c_constant(1.0, 0.9) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c_constant(2.0, 0.25) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c_constant(2.0, 0.4) == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(c_constant(2.0, 0.01) ==
          doctest::Approx(2.0 * 0.99 / 0.98 - 1.0).epsilon(1e-12));
    // quadrature against the alpha in {1,2} closed forms
    CHECK(c_constant_quadrature(1.0, 0.5) == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(c_constant_quadrature(2.0, 0.25) == doctest::Approx(2.0).epsilon(1e-7));
    CHECK(c_constant_quadrature(2.0, 0.4) == doctest::Approx(5.0).epsilon(1e-7));
    CHECK_THROWS_AS(c_constant(2.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(c_constant(2.0, 0.75), std::domain_error);
}

TEST_CASE("c constant fractional alpha against the series route") {
    for (auto [alpha, p] : {std::pair{0.5, 0.5}, {1.3, 0.5}, {1.7, 0.4}, {0.8, 0.9}}) {
        double series = c_constant_series(alpha, p);
        double quad = c_constant(alpha, p);
        INFO("alpha = ", alpha, " p = ", p, " series = ", series, " quad = ", quad);
        CHECK(std::abs(quad / series - 1.0) < 1e-6);
    }
}

TEST_CASE("critical constant") {
    CHECK(critical_constant(2.0, 0.5) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(critical_constant(1.25, 0.8) == doctest::Approx(0.2 * std::tgamma(2.25)).epsilon(1e-12));
    CHECK(critical_constant(1.25, 0.8) == doctest::Approx(0.22660).epsilon(1e-4));
    CHECK(critical_constant(1.5, 2.0 / 3.0) ==
          doctest::Approx(std::tgamma(2.5) / 3.0).epsilon(1e-12));
    CHECK(critical_constant(1.5, 2.0 / 3.0) == doctest::Approx(0.44311).epsilon(1e-4));
    CHECK_THROWS_AS(critical_constant(2.0, 0.25), std::domain_error);
}

TEST_CASE("incomplete gamma against erf closed forms") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        CHECK(gamma_q(0.5, x) == doctest::Approx(std::erfc(std::sqrt(x))).epsilon(1e-10));
        CHECK(gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-10));
    }
    CHECK(gamma_p(3.0, 0.0) == 0.0);
    CHECK(gamma_q(3.0, 0.0) == 1.0);
}

TEST_CASE("exact mean of the squared cluster sum") {
    // n = 2: sizes {2} w.p. p else {1,1}: E = 4p + 2(1-p) = 2 + 2p
    CHECK(expected_cluster_square_sum(2, 0.25) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(expected_cluster_square_sum(2, 0.5) == doctest::Approx(3.0).epsilon(1e-12));
    // p = 1/2 collapses to n * H_n
    CHECK(expected_cluster_square_sum(4, 0.5) ==
          doctest::Approx(4.0 * (1.0 + 0.5 + 1.0 / 3.0 + 0.25)).epsilon(1e-12));
    // normalized form approaches c(2,p) = 1/(1-2p) from below at rate n^{2p-1}
    double c = c_constant(2.0, 0.2);
    double prev_gap = 1e300;
    for (int64_t n : {100, 1000, 10000}) {
        double mean = expected_cluster_square_sum(n, 0.2) / double(n);
        CHECK(mean < c);
        CHECK(c - mean < prev_gap);
        prev_gap = c - mean;
    }
}

TEST_CASE("kolmogorov tail") {
    CHECK(kolmogorov_q(0.5) == doctest::Approx(0.9639).epsilon(1e-3));
    CHECK(kolmogorov_q(10.0) < 1e-20);
    CHECK(kolmogorov_q(-1.0) == 1.0);
    CHECK(kolmogorov_q(0.3) > kolmogorov_q(0.8));
}

TEST_CASE("normal quantile and Bonferroni thresholds") {
    CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
    CHECK(normal_quantile(0.995) == doctest::Approx(2.5758293035).epsilon(1e-8));
    CHECK(bonferroni_z(0.05, 1) == doctest::Approx(1.959963985).epsilon(1e-8));
    CHECK(bonferroni_z(0.01, 9) > bonferroni_z(0.01, 1));
}
