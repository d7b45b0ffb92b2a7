#include "nlc/covariance.hpp"

#include <cmath>

#include "nlc/errors.hpp"

namespace nlc {

namespace {

constexpr double kConnectivityTol = 1e-8;

double require_fiedler(const Spectrum& spec) {
    const double lam2 = spec.fiedler();
    if (!(lam2 > kConnectivityTol)) {
        throw ValidationError("covariance: graph is disconnected (lambda_2 ~ 0)");
    }
    return lam2;
}

double simpson(double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_simpson(const F& f, double a, double m, double b, double fa, double fm,
                        double fb, double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * eps) {
        return left + right + delta / 15.0;
    }
    return adaptive_simpson(f, a, lm, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
           adaptive_simpson(f, m, rm, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace

AsymptoticCovariance asymptotic_covariance(const Spectrum& spec, const TransmitFunction& f,
                                           double theta0, double a, double sigma2_v) {
    const int n = spec.size();
    if (n < 2) throw ValidationError("covariance: requires at least 2 nodes");
    AsymptoticCovariance out;
    out.a = a;
    out.theta0 = theta0;
    out.h_prime_theta0 = f.derivative(theta0);
    out.sigma2_v = sigma2_v;
    out.valid = 2.0 * a * out.h_prime_theta0 * spec.fiedler() > 1.0;
    if (!out.valid) return out;

    out.S_diag.resize(n - 1);
    for (int i = 0; i < n - 1; ++i) {
        const double lam = spec.eigenvalues[i + 1];
        out.S_diag[i] = a * a * sigma2_v / (2.0 * a * out.h_prime_theta0 * lam - 1.0);
    }

    // C = (a^2 sigma2_v / N) 1 1^T + (1/N) Phi S Phi^T
    const Matrix phi = spec.phi();
    Matrix c(n, n, a * a * sigma2_v / n);
    for (int r = 0; r < n; ++r) {
        for (int col = r; col < n; ++col) {
            double acc = c(r, col);
            for (int k = 0; k < n - 1; ++k) {
                acc += phi(r, k) * out.S_diag[k] * phi(col, k) / n;
            }
            c(r, col) = acc;
            c(col, r) = acc;
        }
    }
    out.C = std::move(c);

    double lam_max = 0.0;
    for (double lam : spectrum(out.C, 1e-9).eigenvalues) lam_max = std::max(lam_max, std::fabs(lam));
    out.spectral_norm = lam_max;
    return out;
}

double optimal_gain(const Spectrum& spec, const TransmitFunction& f, double theta0) {
    const double lam2 = require_fiedler(spec);
    const double hp = f.derivative(theta0);
    if (!(hp > 0.0)) throw ValidationError("covariance: h'(theta0) must be > 0");
    const double n = static_cast<double>(spec.size());
    return (n + 1.0) / (2.0 * n * lam2 * hp);
}

double optimal_covariance_norm(const Spectrum& spec, const TransmitFunction& f,
                               double theta0, double sigma2_v) {
    const double lam2 = require_fiedler(spec);
    const double hp = f.derivative(theta0);
    if (!(hp > 0.0)) throw ValidationError("covariance: h'(theta0) must be > 0");
    const double n = static_cast<double>(spec.size());
    const double ratio = (n + 1.0) / (2.0 * n);
    return ratio * ratio * sigma2_v / (lam2 * lam2) / (hp * hp);
}

double mode_variance_quadrature(double a, double h_prime, double lambda, double sigma2_v,
                                double rel_tol) {
    const double rate = 2.0 * a * h_prime * lambda - 1.0;
    if (!(rate > 0.0)) {
        throw ValidationError("mode variance quadrature: 2 a h'(theta0) lambda must exceed 1");
    }
    const double upper = 50.0 / rate;
    const auto integrand = [&](double t) { return a * a * sigma2_v * std::exp(-rate * t); };
    const double fa = integrand(0.0);
    const double fb = integrand(upper);
    const double mid = 0.5 * upper;
    const double fm = integrand(mid);
    const double whole = simpson(fa, fm, fb, upper);
    const double scale = a * a * sigma2_v / rate;  // only for the tolerance scale
    return adaptive_simpson(integrand, 0.0, mid, upper, fa, fm, fb, whole,
                            rel_tol * scale, 48);
}

std::vector<GainGridPoint> covariance_norm_grid(const Spectrum& spec,
                                                const TransmitFunction& f, double theta0,
                                                double sigma2_v, double a_lo, double a_hi,
                                                int points) {
    if (points < 2) throw ValidationError("covariance grid: need at least 2 points");
    if (!(a_hi > a_lo)) throw ValidationError("covariance grid: need a_hi > a_lo");
    std::vector<GainGridPoint> grid(points);
    for (int i = 0; i < points; ++i) {
        const double a = a_lo + (a_hi - a_lo) * i / (points - 1);
        auto cov = asymptotic_covariance(spec, f, theta0, a, sigma2_v);
        grid[i] = {a, cov.valid ? cov.spectral_norm : 0.0, cov.valid};
    }
    return grid;
}

}  // namespace nlc
