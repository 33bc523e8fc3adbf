#include "sharkswim/stable.hpp"

#include <cmath>
#include <stdexcept>

namespace sharkswim {

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;

// Standard symmetric alpha-stable on R with CF exp(-|theta|^alpha), via the
// Chambers-Mallows-Stuck angular/exponential transform (beta = 0 case).
double sample_symmetric_stable_1d(double alpha, RngStream& rng) {
    if (alpha == 2.0) return std::sqrt(2.0) * rng.normal();
    if (alpha == 1.0) return std::tan(kPi * (rng.uniform_pos() - 0.5)); // Cauchy
    double u = kPi * (rng.uniform_pos() - 0.5); // uniform on (-pi/2, pi/2)
    double e = rng.exponential();
    double t = std::sin(alpha * u) / std::pow(std::cos(u), 1.0 / alpha);
    double s = std::pow(std::cos((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
    return t * s;
}
} // namespace

void StableSpec::validate() const {
    if (!(alpha > 0.0) || !(alpha <= 2.0))
        throw std::invalid_argument("StableSpec: alpha must lie in (0,2]");
    if (dimension < 1)
        throw std::invalid_argument("StableSpec: dimension must be >= 1");
    if (!(scale_alpha >= 0.0))
        throw std::invalid_argument("StableSpec: scale_alpha must be >= 0");
}

double sample_positive_stable(double alpha, RngStream& rng) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("sample_positive_stable: alpha must lie in (0,1)");
    // Kanter: A = sin(a*pi*U) * sin((1-a)*pi*U)^{(1-a)/a} / (sin(pi*U)^{1/a} * E^{(1-a)/a}).
    // Evaluated in log space; exponents blow up as alpha -> 0 otherwise.
    double u = rng.uniform_pos();
    double e = rng.exponential();
    double ra = (1.0 - alpha) / alpha;
    double log_a = std::log(std::sin(alpha * kPi * u)) +
                   ra * std::log(std::sin((1.0 - alpha) * kPi * u)) -
                   (1.0 / alpha) * std::log(std::sin(kPi * u)) - ra * std::log(e);
    return std::exp(log_a);
}

double sample_mittag_leffler(double p, RngStream& rng) {
    if (!(p > 0.0) || !(p < 1.0))
        throw std::invalid_argument("sample_mittag_leffler: p must lie in (0,1)");
    return std::pow(sample_positive_stable(p, rng), -p);
}

void sample_isotropic_stable(const StableSpec& spec, RngStream& rng,
                             std::span<double> out) {
    spec.validate();
    if (out.size() != static_cast<std::size_t>(spec.dimension))
        throw std::invalid_argument("sample_isotropic_stable: output span size != dimension");
    if (spec.scale_alpha == 0.0) {
        for (auto& x : out) x = 0.0;
        return;
    }
    double scale = std::pow(spec.scale_alpha, 1.0 / spec.alpha);
    if (spec.alpha == 2.0) {
        // CF exp(-c*|theta|^2) means iid N(0, 2c) coordinates.
        double sigma = std::sqrt(2.0 * spec.scale_alpha);
        for (auto& x : out) x = sigma * rng.normal();
        return;
    }
    if (spec.dimension == 1) {
        out[0] = scale * sample_symmetric_stable_1d(spec.alpha, rng);
        return;
    }
    // Subordinated Gaussian: X = sqrt(2A) G with A one-sided (alpha/2)-stable.
    // At alpha = 1 the subordinator is Levy(1/2) = 1/(2 Z^2), so sqrt(2A) = 1/|Z|.
    double factor;
    if (spec.alpha == 1.0) {
        factor = 1.0 / std::abs(rng.normal());
    } else {
        factor = std::sqrt(2.0 * sample_positive_stable(spec.alpha / 2.0, rng));
    }
    for (auto& x : out) x = scale * factor * rng.normal();
}

std::vector<double> sample_isotropic_stable(const StableSpec& spec, RngStream& rng) {
    std::vector<double> out(static_cast<std::size_t>(spec.dimension));
    sample_isotropic_stable(spec, rng, out);
    return out;
}

double stable_cf_radial(const StableSpec& spec, double theta_norm) {
    spec.validate();
    return std::exp(-spec.scale_alpha * std::pow(theta_norm, spec.alpha));
}

double stable_cf(const StableSpec& spec, std::span<const double> theta) {
    double ss = 0.0;
    for (double t : theta) ss += t * t;
    return stable_cf_radial(spec, std::sqrt(ss));
}

std::uint64_t sample_geometric(double r, RngStream& rng) {
    if (!(r > 0.0) || r > 1.0)
        throw std::invalid_argument("sample_geometric: r must lie in (0,1]");
    if (r >= 1.0) return 1;
    // Inversion: ceil(log U / log(1-r)) is Geom(r) on {1,2,...}.
    double g = std::ceil(std::log(rng.uniform_pos()) / std::log1p(-r));
    return g < 1.0 ? 1 : static_cast<std::uint64_t>(g);
}

double sample_gamma(double shape, RngStream& rng) {
    if (!(shape > 0.0))
        throw std::invalid_argument("sample_gamma: shape must be > 0");
    if (shape < 1.0) {
        // Boost to shape+1 and scale back (Marsaglia-Tsang trick).
        double u = rng.uniform_pos();
        return sample_gamma(shape + 1.0, rng) * std::pow(u, 1.0 / shape);
    }
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = rng.normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = rng.uniform_pos();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double sample_beta(double a, double b, RngStream& rng) {
    double x = sample_gamma(a, rng);
    double y = sample_gamma(b, rng);
    return x / (x + y);
}

int sample_beta_binomial_urn(int n, int m, RngStream& rng) {
    if (n < 0 || m < 1)
        throw std::invalid_argument("sample_beta_binomial_urn: need n >= 0, m >= 1");
    std::uint64_t black = 1, total = static_cast<std::uint64_t>(m) + 1;
    int draws_black = 0;
    for (int i = 0; i < n; ++i, ++total) {
        if (rng.uniform_below(total) < black) {
            ++black;
            ++draws_black;
        }
    }
    return draws_black;
}

} // namespace sharkswim
