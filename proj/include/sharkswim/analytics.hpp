#pragma once

#include <cstdint>

namespace sharkswim::analytics {

struct QuadratureConfig {
    double rel_tol = 1e-8;    // adaptive quadrature target
    int max_depth = 40;       // refinement depth limit
    double series_tol = 1e-12; // relative truncation tolerance for series
};

// log Gamma for strictly positive arguments.
double log_gamma(double x);
// log Beta(a,b) = lgamma(a)+lgamma(b)-lgamma(a+b).
double log_beta(double a, double b);
// log(Gamma(x+delta)/Gamma(x)) without the cancellation of subtracting two
// huge log-Gammas; keeps ~1e-12 relative accuracy up to x ~ 1e9 and beyond.
double log_gamma_ratio(double x, double delta);

// Regularized incomplete gamma functions P(a,x), Q(a,x) = 1 - P(a,x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Kolmogorov limit tail Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
double kolmogorov_q(double t);

// Standard normal quantile, bisected from erfc; |error| < 1e-10.
double normal_quantile(double prob);
// Two-sided z threshold for a familywise level over m comparisons
// (Bonferroni): Phi^{-1}(1 - level / (2m)).
double bonferroni_z(double level, int comparisons);

// Polya urn with 1 black and m white initial balls: pmf of the number of
// black draws in n draws, P(i) = C(n,i) B(i+1, n-i+m)/B(1,m) on {0,...,n}.
// Out-of-support i yields 0. Computed in log-Gamma space.
double beta_binomial_pmf(int n, int m, int i);
// Mean n/(m+1) and second moment n(2n+m)/((m+1)(m+2)) of the same law.
double beta_binomial_mean(int n, int m);
double beta_binomial_second_moment(int n, int m);

// Exact moments of the root cluster of a percolated recursive tree on n
// nodes with retention probability p; order must be 1 or 2.
double root_cluster_moment(std::int64_t n, double p, int order);

// Mittag-Leffler moment E[X^q] = Gamma(q+1)/Gamma(pq+1).
double ml_moment(double p, double q);

// Limit moment of the i-th cluster: (1-p) Gamma(q+1) Gamma(i) / Gamma(pq+i)
// for i >= 2; i = 1 routes to ml_moment (the root carries no deletion factor).
double xi_moment(std::int64_t i, double p, double q);

// E[G^alpha] for G geometric on {1,2,...} with parameter r in (0,1].
// Closed forms for alpha = 1, 2; truncated series otherwise.
double geometric_alpha_moment(double r, double alpha,
                              const QuadratureConfig& cfg = {});

// c(alpha,p) = integral_0^{1-p} E[G(r(x))^alpha] dx with r(x) = (x/(1-p))^p,
// defined for alpha*p < 1. The x -> (1-p) s^{1/(1-alpha p)} substitution
// removes the integrable singularity at 0. Closed forms at alpha = 1 (always
// 1) and alpha = 2 (2(1-p)/(1-2p) - 1) are returned directly.
double c_constant(double alpha, double p, const QuadratureConfig& cfg = {});
// Quadrature path without the alpha in {1,2} closed-form shortcuts; the
// closed forms serve as regression anchors for this routine in the tests.
double c_constant_quadrature(double alpha, double p, const QuadratureConfig& cfg = {});

// (1-p) * Gamma(1+alpha); requires |alpha*p - 1| <= 1e-12.
double critical_constant(double alpha, double p);

// Exact E[sum_i |c_{i,n}|^2] for the percolated recursive tree. Counting
// same-cluster node pairs gives T_n = T_{n-1}(1 + 2p/(n-1)) + 2p for the
// off-diagonal sum, solved in closed form:
//   p != 1/2:  n + a*(n - Gamma(n+2p)/(Gamma(1+2p)Gamma(n))), a = 2p/(1-2p)
//   p  = 1/2:  n * H_n.
// This pins the finite-n transient of the subcritical/critical statistics.
double expected_cluster_square_sum(std::int64_t n, double p);

} // namespace sharkswim::analytics
