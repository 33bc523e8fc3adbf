#include "sharkswim/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace sharkswim::analytics {

namespace {

double lchoose(std::int64_t n, std::int64_t k) {
    return log_gamma(double(n) + 1.0) - log_gamma(double(k) + 1.0) -
           log_gamma(double(n - k) + 1.0);
}

// Lower incomplete gamma by power series, x < a+1.
double gamma_p_series(double a, double x) {
    double ap = a, sum = 1.0 / a, term = sum;
    for (int n = 0; n < 10000; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
    throw std::runtime_error("gamma_p: series failed to converge");
}

// Upper incomplete gamma by modified Lentz continued fraction, x >= a+1.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -double(i) * (double(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
    throw std::runtime_error("gamma_q: continued fraction failed to converge");
}

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be > 0");
    return std::lgamma(x);
}

double log_beta(double a, double b) {
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double log_gamma_ratio(double x, double delta) {
    if (!(x > 0.0) || !(x + delta > 0.0))
        throw std::domain_error("log_gamma_ratio: arguments must be > 0");
    if (x < 1e4) return log_gamma(x + delta) - log_gamma(x);
    // Stirling with the Binet correction, arranged so every term is O(delta):
    // (x - 1/2) log1p(d/x) + d log(x+d) - d + J(x+d) - J(x),
    // J(y) = 1/(12y) - 1/(360y^3) + 1/(1260y^5).
    double xd = x + delta;
    auto binet = [](double y) {
        double y2 = y * y;
        return (1.0 / 12.0 - (1.0 / 360.0 - 1.0 / (1260.0 * y2)) / y2) / y;
    };
    return (x - 0.5) * std::log1p(delta / x) + delta * std::log(xd) - delta +
           binet(xd) - binet(x);
}

double gamma_p(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw std::domain_error("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

double kolmogorov_q(double t) {
    if (t <= 0.0) return 1.0;
    double sum = 0.0;
    for (int k = 1; k <= 100000; ++k) {
        double term = std::exp(-2.0 * double(k) * double(k) * t * t);
        sum += (k % 2 == 1) ? term : -term;
        if (term < 1e-18) break;
    }
    double q = 2.0 * sum;
    return q < 0.0 ? 0.0 : (q > 1.0 ? 1.0 : q);
}

double normal_quantile(double prob) {
    if (!(prob > 0.0) || !(prob < 1.0))
        throw std::domain_error("normal_quantile: prob must lie in (0,1)");
    auto cdf = [](double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); };
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (cdf(mid) < prob ? lo : hi) = mid;
        if (hi - lo < 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

double bonferroni_z(double level, int comparisons) {
    if (!(level > 0.0) || level >= 1.0 || comparisons < 1)
        throw std::invalid_argument("bonferroni_z: bad arguments");
    return normal_quantile(1.0 - level / (2.0 * double(comparisons)));
}

double beta_binomial_pmf(int n, int m, int i) {
    if (n < 0 || m < 1) throw std::invalid_argument("beta_binomial_pmf: need n >= 0, m >= 1");
    if (i < 0 || i > n) return 0.0;
    return std::exp(lchoose(n, i) + log_beta(double(i) + 1.0, double(n - i + m)) -
                    log_beta(1.0, double(m)));
}

double beta_binomial_mean(int n, int m) {
    if (n < 0 || m < 1) throw std::invalid_argument("beta_binomial_mean: need n >= 0, m >= 1");
    return double(n) / (double(m) + 1.0);
}

double beta_binomial_second_moment(int n, int m) {
    if (n < 0 || m < 1)
        throw std::invalid_argument("beta_binomial_second_moment: need n >= 0, m >= 1");
    return double(n) * (2.0 * double(n) + double(m)) /
           ((double(m) + 1.0) * (double(m) + 2.0));
}

double root_cluster_moment(std::int64_t n, double p, int order) {
    if (n < 1) throw std::invalid_argument("root_cluster_moment: n must be >= 1");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("root_cluster_moment: p must lie in (0,1)");
    double nn = double(n);
    if (order == 1) return std::exp(log_gamma_ratio(nn, p) - log_gamma(p + 1.0));
    if (order == 2) {
        double a = std::exp(log_gamma_ratio(nn, 2.0 * p) - log_gamma(2.0 * p));
        double b = std::exp(log_gamma_ratio(nn, p) - log_gamma(p));
        return (a - b) / p;
    }
    throw std::invalid_argument("root_cluster_moment: order must be 1 or 2");
}

double ml_moment(double p, double q) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("ml_moment: p must lie in (0,1)");
    if (q < 0.0) throw std::invalid_argument("ml_moment: q must be >= 0");
    return std::exp(log_gamma(q + 1.0) - log_gamma(p * q + 1.0));
}

double xi_moment(std::int64_t i, double p, double q) {
    if (i < 1) throw std::invalid_argument("xi_moment: i must be >= 1");
    if (i == 1) return ml_moment(p, q);
    if (!(p > 0.0) || !(p < 1.0)) throw std::invalid_argument("xi_moment: p must lie in (0,1)");
    if (q < 0.0) throw std::invalid_argument("xi_moment: q must be >= 0");
    return (1.0 - p) * std::exp(log_gamma(q + 1.0) - log_gamma_ratio(double(i), p * q));
}

double geometric_alpha_moment(double r, double alpha, const QuadratureConfig& cfg) {
    if (!(r > 0.0) || r > 1.0)
        throw std::invalid_argument("geometric_alpha_moment: r must lie in (0,1]");
    if (alpha < 0.0) throw std::invalid_argument("geometric_alpha_moment: alpha must be >= 0");
    if (r == 1.0) return 1.0;
    if (alpha == 0.0) return 1.0;
    if (alpha == 1.0) return 1.0 / r;
    if (alpha == 2.0) return (2.0 - r) / (r * r);
    double q = 1.0 - r;
    double sum = 0.0, term = r; // term_k = k^alpha q^{k-1} r, k = 1
    for (std::int64_t k = 1;; ++k) {
        sum += term;
        // Future term ratios are bounded by rho = (1+1/k)^alpha * q, which
        // decreases in k; once rho < 1 the tail is at most term*rho/(1-rho).
        double rho = std::pow(1.0 + 1.0 / double(k), alpha) * q;
        if (rho < 1.0 && term * rho / (1.0 - rho) < cfg.series_tol * sum) break;
        term = std::pow(double(k + 1) / double(k), alpha) * q * term;
        if (k > 500000000)
            throw std::runtime_error("geometric_alpha_moment: series did not converge");
    }
    return sum;
}

namespace {

// f(x(s)) * dx/ds after x = (1-p) s^{1/(1-alpha p)}; bounded on [0,1].
struct CIntegrand {
    double alpha, p, beta; // beta = 1/(1 - alpha p)
    const QuadratureConfig& cfg;
    double operator()(double s) const {
        if (s <= 0.0) // limit value: f(x) ~ Gamma(1+alpha) ((1-p)/x)^{alpha p} as x -> 0
            return std::tgamma(1.0 + alpha) * (1.0 - p) * beta;
        double r = std::pow(s, p * beta); // ((x/(1-p)))^p with the substitution
        if (r > 1.0) r = 1.0;
        double f = geometric_alpha_moment(r, alpha, cfg);
        return f * (1.0 - p) * beta * std::pow(s, beta - 1.0);
    }
};

double adaptive_simpson(const CIntegrand& g, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth, int max_depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = g(lm), frm = g(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth >= max_depth || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(g, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, max_depth) +
           adaptive_simpson(g, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, max_depth);
}

} // namespace

double c_constant_quadrature(double alpha, double p, const QuadratureConfig& cfg) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("c_constant: p must lie in (0,1)");
    if (!(alpha > 0.0) || alpha * p >= 1.0)
        throw std::domain_error("c_constant: requires alpha*p < 1");
    CIntegrand g{alpha, p, 1.0 / (1.0 - alpha * p), cfg};
    double fa = g(0.0), fb = g(1.0), fm = g(0.5);
    double whole = (1.0 / 6.0) * (fa + 4.0 * fm + fb);
    // Scale-aware absolute tolerance from the requested relative one.
    double tol = cfg.rel_tol * std::max(std::abs(whole), 1e-3);
    return adaptive_simpson(g, 0.0, 1.0, fa, fm, fb, whole, tol, 0, cfg.max_depth);
}

double c_constant(double alpha, double p, const QuadratureConfig& cfg) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("c_constant: p must lie in (0,1)");
    if (!(alpha > 0.0) || alpha * p >= 1.0)
        throw std::domain_error("c_constant: requires alpha*p < 1");
    if (alpha == 1.0) return 1.0;
    if (alpha == 2.0) return 2.0 * (1.0 - p) / (1.0 - 2.0 * p) - 1.0;
    return c_constant_quadrature(alpha, p, cfg);
}

double critical_constant(double alpha, double p) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("critical_constant: p must lie in (0,1)");
    if (std::abs(alpha * p - 1.0) > 1e-12)
        throw std::domain_error("critical_constant: requires alpha*p = 1");
    return (1.0 - p) * std::tgamma(1.0 + alpha);
}

double expected_cluster_square_sum(std::int64_t n, double p) {
    if (n < 1) throw std::invalid_argument("expected_cluster_square_sum: n must be >= 1");
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("expected_cluster_square_sum: p must lie in (0,1)");
    double nn = double(n);
    if (std::abs(p - 0.5) < 1e-12) {
        double h;
        if (n <= 10000000) {
            h = 0.0;
            for (int64_t k = 1; k <= n; ++k) h += 1.0 / double(k);
        } else {
            constexpr double euler = 0.57721566490153286060651209;
            h = std::log(nn) + euler + 1.0 / (2.0 * nn) - 1.0 / (12.0 * nn * nn);
        }
        return nn * h;
    }
    double a = 2.0 * p / (1.0 - 2.0 * p);
    return nn + a * (nn - std::exp(log_gamma_ratio(nn, 2.0 * p) - log_gamma(1.0 + 2.0 * p)));
}

} // namespace sharkswim::analytics
