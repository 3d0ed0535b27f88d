#pragma once

#include <complex>

#include "eigenbc/types.hpp"
#include "eigenbc/weights.hpp"

namespace fixtures {

using eigenbc::Complex;
using eigenbc::GaussianWeight;
using eigenbc::Index;
using eigenbc::Matrix;

// d = 1 nearest-neighbor weight with symbol 5/2 - z - 1/z.
// Zeros 1/2 and 2, invariant boundary 3/4 on both sides, per-edge
// eigenvalue pi.
inline GaussianWeight ou_weight()
{
    Matrix a(2, 2);
    a << 1.25, -1.0, -1.0, 1.25;
    return GaussianWeight(1.0, a);
}

// d = 2 weight with rank-one off-diagonal coupling diag(4/5, 0):
// defect 1, zeros -1/2 and -2, invariant boundary diag(3/5, 1).
inline GaussianWeight rd_weight()
{
    Matrix a = Matrix::Identity(4, 4);
    a(0, 2) = 0.8;
    a(2, 0) = 0.8;
    return GaussianWeight(1.0, a);
}

// Two uncoupled copies of the d = 1 fixture: every zero has a
// two-dimensional kernel, so the simple-zero assumption fails.
inline GaussianWeight decoupled_weight()
{
    Matrix a = Matrix::Zero(4, 4);
    a.topLeftCorner(2, 2) = 1.25 * Matrix::Identity(2, 2);
    a.bottomRightCorner(2, 2) = 1.25 * Matrix::Identity(2, 2);
    a.topRightCorner(2, 2) = -Matrix::Identity(2, 2);
    a.bottomLeftCorner(2, 2) = -Matrix::Identity(2, 2);
    return GaussianWeight(1.0, a);
}

inline Matrix scalar(double x)
{
    Matrix m(1, 1);
    m(0, 0) = x;
    return m;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b)
{
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace fixtures
