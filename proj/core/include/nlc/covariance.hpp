#pragma once

#include <vector>

#include "nlc/matrix.hpp"
#include "nlc/spectrum.hpp"
#include "nlc/transmit.hpp"

namespace nlc {

/// Asymptotic covariance of the sqrt(t)-scaled state error around the
/// consensus point theta0, for the a/t step schedule with i.i.d. vector
/// noise of covariance sigma2_v * I. Valid only when 2*a*h'(theta0)*lambda_2
/// exceeds 1; near that threshold the slowest mode variance blows up.
struct AsymptoticCovariance {
    double a = 0.0;
    double theta0 = 0.0;
    double h_prime_theta0 = 0.0;
    double sigma2_v = 0.0;
    bool valid = false;
    std::vector<double> S_diag;  // per-mode variances, modes ordered by eigenvalue
    Matrix C;                    // empty when invalid
    double spectral_norm = 0.0;
};

AsymptoticCovariance asymptotic_covariance(const Spectrum& spec, const TransmitFunction& f,
                                           double theta0, double a, double sigma2_v);

/// Gain minimizing the spectral norm of the asymptotic covariance:
/// (N+1) / (2 N lambda_2 h'(theta0)). Throws on a disconnected spectrum.
double optimal_gain(const Spectrum& spec, const TransmitFunction& f, double theta0);

/// Closed-form minimum norm ((N+1)/2N)^2 * sigma2_v / (lambda_2 h'(theta0))^2.
double optimal_covariance_norm(const Spectrum& spec, const TransmitFunction& f,
                               double theta0, double sigma2_v);

/// Independent route to the per-mode variance: adaptive Simpson quadrature of
///   integral_0^inf a^2 sigma2_v exp(2 (1/2 - a h' lambda) t) dt
/// truncated at 50 decay constants. Cross-checks the closed form.
double mode_variance_quadrature(double a, double h_prime, double lambda, double sigma2_v,
                                double rel_tol = 1e-10);

struct GainGridPoint {
    double a = 0.0;
    double norm = 0.0;
    bool valid = false;
};

/// ||C(a)|| over an even grid; invalid gains are flagged and carry no norm.
std::vector<GainGridPoint> covariance_norm_grid(const Spectrum& spec,
                                                const TransmitFunction& f, double theta0,
                                                double sigma2_v, double a_lo, double a_hi,
                                                int points);

}  // namespace nlc
