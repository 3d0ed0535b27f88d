#pragma once

#include <functional>

#include "eigenbc/types.hpp"

namespace eigenbc::numkit {

/// Default relative tolerance for structural checks (Hermitian deviation,
/// PD margin, rank thresholds).  Sits well above double-precision
/// eigensolver noise for the dimensions this library targets (d <= 16).
inline constexpr double kStructuralTol = 1e-10;

/// Default grid size for quadrature on the unit circle.  The trapezoid
/// rule converges spectrally for the smooth periodic integrands arising
/// here, so this is plenty.
inline constexpr int kQuadratureN = 4096;

/// (m + m*)/2.
Matrix hermitian_part(const Matrix& m);

/// True iff ||m - m*|| <= tol*(1 + ||m||) and the smallest eigenvalue of
/// the Hermitian part exceeds tol*||m||.  Rejects non-square input.
bool is_hermitian_pd(const Matrix& m, double tol = kStructuralTol);

/// Number of singular values above tol * sigma_max; 0 for the zero matrix.
Index numerical_rank(const Matrix& m, double tol = kStructuralTol);

/// (1/n) * sum_{j<n} f(2*pi*j/n), the trapezoidal approximation of
/// (1/2pi) * integral of f over [0, 2pi).  Non-finite evaluations of f
/// raise NumericalFailure.
Matrix circle_quadrature(const std::function<Matrix(double)>& f,
                         int n = kQuadratureN);

/// Determinant of a Hermitian positive-definite matrix via Cholesky.
/// Throws NumericalFailure when the factorization breaks down.
double hpd_det(const Matrix& m);

/// Inverse of a Hermitian positive-definite matrix via Cholesky.
Matrix hpd_inverse(const Matrix& m);

} // namespace eigenbc::numkit
