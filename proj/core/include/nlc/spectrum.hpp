#pragma once

#include <vector>

#include "nlc/matrix.hpp"

namespace nlc {

/// Eigendecomposition of a graph Laplacian, eigenvalues ascending.
/// For a connected graph the first eigenpair is (0, 1/sqrt(N)) and the
/// remaining columns span the disagreement subspace.
struct Spectrum {
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // orthonormal columns, signs canonicalized

    int size() const { return static_cast<int>(eigenvalues.size()); }

    /// Smallest nonzero-index eigenvalue (algebraic connectivity). Requires N >= 2.
    double fiedler() const;
    double lambda_max() const { return eigenvalues.back(); }

    /// N x (N-1) block of eigenvectors excluding the first column.
    Matrix phi() const;
};

struct JacobiResult {
    std::vector<double> eigenvalues;  // unsorted (diagonal order)
    Matrix vectors;
    int sweeps = 0;
};

/// Cyclic Jacobi rotations for a symmetric matrix. Converges when the
/// off-diagonal Frobenius mass drops to rel_tol times the input Frobenius
/// norm; throws NumericalError after max_sweeps with the residual attained.
JacobiResult jacobi_eigensymm(Matrix a, double rel_tol = 1e-12, int max_sweeps = 100);

/// Full Laplacian spectrum: validates symmetry within tol, sorts ascending,
/// canonicalizes eigenvector signs (largest-magnitude entry positive).
Spectrum spectrum(const Matrix& laplacian, double tol = 1e-9);

}  // namespace nlc
