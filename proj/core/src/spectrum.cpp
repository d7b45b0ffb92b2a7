#include "nlc/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nlc/errors.hpp"

namespace nlc {

double Spectrum::fiedler() const {
    if (size() < 2) throw ValidationError("fiedler: requires at least 2 nodes");
    return eigenvalues[1];
}

Matrix Spectrum::phi() const {
    const int n = size();
    if (n < 2) throw ValidationError("phi: requires at least 2 nodes");
    Matrix out(n, n - 1);
    for (int r = 0; r < n; ++r)
        for (int c = 1; c < n; ++c) out(r, c - 1) = eigenvectors(r, c);
    return out;
}

namespace {

double offdiag_frobenius(const Matrix& a) {
    double s = 0.0;
    for (int p = 0; p < a.rows(); ++p)
        for (int q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
}

}  // namespace

JacobiResult jacobi_eigensymm(Matrix a, double rel_tol, int max_sweeps) {
    const int n = a.rows();
    if (n != a.cols()) throw ValidationError("jacobi: matrix must be square");
    Matrix v = Matrix::identity(n);
    const double threshold = rel_tol * a.frobenius_norm();

    int sweep = 0;
    while (offdiag_frobenius(a) > threshold && sweep < max_sweeps) {
        ++sweep;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p);
                const double aqq = a(q, q);
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (int r = 0; r < n; ++r) {
                    if (r != p && r != q) {
                        const double arp = a(r, p);
                        const double arq = a(r, q);
                        a(r, p) = a(p, r) = arp - s * (arq + tau * arp);
                        a(r, q) = a(q, r) = arq + s * (arp - tau * arq);
                    }
                    const double vrp = v(r, p);
                    const double vrq = v(r, q);
                    v(r, p) = vrp - s * (vrq + tau * vrp);
                    v(r, q) = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    const double residual = offdiag_frobenius(a);
    if (residual > threshold) {
        std::ostringstream msg;
        msg << "jacobi: no convergence after " << max_sweeps
            << " sweeps; off-diagonal residual " << residual << " > " << threshold;
        throw NumericalError(msg.str());
    }

    JacobiResult out;
    out.eigenvalues.resize(n);
    for (int i = 0; i < n; ++i) out.eigenvalues[i] = a(i, i);
    out.vectors = std::move(v);
    out.sweeps = sweep;
    return out;
}

Spectrum spectrum(const Matrix& laplacian, double tol) {
    const int n = laplacian.rows();
    if (n != laplacian.cols()) throw ValidationError("spectrum: matrix must be square");
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (std::fabs(laplacian(i, j) - laplacian(j, i)) > tol) {
                throw ValidationError("spectrum: matrix is not symmetric within tolerance");
            }
        }
    }

    auto jr = jacobi_eigensymm(laplacian);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return jr.eigenvalues[a] < jr.eigenvalues[b];
    });

    Spectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n, n);
    for (int c = 0; c < n; ++c) {
        const int src = order[c];
        out.eigenvalues[c] = jr.eigenvalues[src];
        // sign convention: largest-magnitude entry of each column positive
        int arg = 0;
        double best = 0.0;
        for (int r = 0; r < n; ++r) {
            const double mag = std::fabs(jr.vectors(r, src));
            if (mag > best) {
                best = mag;
                arg = r;
            }
        }
        const double sign = jr.vectors(arg, src) < 0.0 ? -1.0 : 1.0;
        for (int r = 0; r < n; ++r) out.eigenvectors(r, c) = sign * jr.vectors(r, src);
    }
    return out;
}

}  // namespace nlc
