#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sharkswim/rng.hpp"

namespace sharkswim {

// Isotropic stable step law in R^d, parametrized by the exponent form of the
// characteristic function: E[exp(i<theta,X>)] = exp(-scale_alpha * |theta|^alpha).
// Multiplying samples by s multiplies scale_alpha by s^alpha.
struct StableSpec {
    double alpha = 2.0;     // stability index in (0,2]
    int dimension = 1;      // d >= 1
    double scale_alpha = 1.0; // coefficient of |theta|^alpha; 1 = standard step

    void validate() const; // throws std::invalid_argument on bad parameters
};

// Fills out[0..d) with one draw of the isotropic alpha-stable law above.
void sample_isotropic_stable(const StableSpec& spec, RngStream& rng,
                             std::span<double> out);
std::vector<double> sample_isotropic_stable(const StableSpec& spec, RngStream& rng);

// One-sided stable with Laplace transform exp(-lambda^alpha), alpha in (0,1).
// Kanter's transform: exact, rejection-free.
double sample_positive_stable(double alpha, RngStream& rng);

// Mittag-Leffler with parameter p in (0,1): X = A^{-p}, A one-sided p-stable.
// Moments: E[X^q] = Gamma(q+1)/Gamma(pq+1).
double sample_mittag_leffler(double p, RngStream& rng);

// exp(-scale_alpha * |theta|^alpha), theta given as a d-vector.
double stable_cf(const StableSpec& spec, std::span<const double> theta);
double stable_cf_radial(const StableSpec& spec, double theta_norm);

// Auxiliary exact samplers used by the tree/Yule machinery and their tests.

// Geometric on {1,2,...} with success parameter r in (0,1].
std::uint64_t sample_geometric(double r, RngStream& rng);

// Gamma(shape, 1) via Marsaglia-Tsang; Beta(a,b) as the usual Gamma ratio.
double sample_gamma(double shape, RngStream& rng);
double sample_beta(double a, double b, RngStream& rng);

// Number of black draws in n Polya-urn draws starting from 1 black, m white
// balls; simulated draw by draw (the defining construction, used as an
// independent oracle against the closed-form pmf).
int sample_beta_binomial_urn(int n, int m, RngStream& rng);

} // namespace sharkswim
