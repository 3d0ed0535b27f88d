#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eigenbc/invariant.hpp"
#include "eigenbc/numkit.hpp"
#include "eigenbc/types.hpp"
#include "eigenbc/weights.hpp"

namespace eigenbc::oracles {

/// Result of a brute-force reference computation.  Every oracle here is
/// algorithmically independent of the spectral route it checks.
struct OracleReport {
    std::string name;
    Matrix value;
    int iterations = 0; // iteration count or grid size
    double residual = 0.0;
    bool converged = true;
};

/// Iterate the Schur-complement fixed point
///   right: B <- A_LL - A_LR (A_RR + B)^{-1} A_RL   from B = A_LL,
///   left:  B <- A_RR - A_RL (B + A_LL)^{-1} A_LR   from B = A_RR,
/// until the update norm drops below tol.  Non-convergence after max_iter
/// is reported through the flag, not thrown.
OracleReport riccati_fixed_point(const GaussianWeight& w, Side side,
                                 double tol = 1e-12, int max_iter = 10000);

/// Fourier coefficient of the densely inverted symbol by circle
/// quadrature; the grid must resolve the oscillation: n >= 4|k| + 16.
Matrix quadrature_fourier(const GaussianWeight& w, long k,
                          int n = numkit::kQuadratureN);

/// All coefficients for |k| <= kmax in one sweep over the grid; entry j
/// holds the coefficient of index j - kmax.
std::vector<Matrix> quadrature_fourier_table(const GaussianWeight& w,
                                             long kmax,
                                             int n = numkit::kQuadratureN);

/// Determinant via a pivoted factorization.
Complex dense_det(const Matrix& m);

/// Ring partition function as the product over discrete Fourier modes.
double dft_partition(const GaussianWeight& w, int p);

/// Seeded random Hermitian positive-definite weight: A = G G* scaled up
/// by a tenth of its norm on the diagonal, G a complex Gaussian matrix.
/// The margin keeps assumption checks in the generic regime.
GaussianWeight random_weight(Index d, std::uint64_t seed);

} // namespace eigenbc::oracles
