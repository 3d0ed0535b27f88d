#pragma once

#include <utility>

#include "eigenbc/types.hpp"

namespace eigenbc {

/// Unnormalized Gaussian kernel on pairs of C^d vectors: a positive scale
/// together with a 2d x 2d Hermitian positive-definite coupling matrix.
/// The four d x d blocks couple the left and right vertex of an edge.
class GaussianWeight {
public:
    GaussianWeight(double alpha, Matrix coupling);

    double alpha() const { return alpha_; }
    Index dim() const { return d_; }
    const Matrix& coupling() const { return a_; }

    /// d minus the rank of the upper-right block; 0 for fully coupled edges.
    Index defect() const { return defect_; }
    bool full_rank() const { return defect_ == 0; }

    auto ll() const { return a_.topLeftCorner(d_, d_); }
    auto lr() const { return a_.topRightCorner(d_, d_); }
    auto rl() const { return a_.bottomLeftCorner(d_, d_); }
    auto rr() const { return a_.bottomRightCorner(d_, d_); }

private:
    double alpha_;
    Matrix a_;
    Index d_;
    Index defect_;
};

/// Unnormalized Gaussian density on a single C^d vector, attached to a
/// chain endpoint.
class BoundaryWeight {
public:
    BoundaryWeight(double beta, Matrix matrix);

    double beta() const { return beta_; }
    Index dim() const { return b_.rows(); }
    const Matrix& matrix() const { return b_; }

private:
    double beta_;
    Matrix b_;
};

/// Associative product of Gaussian weights: integrates out the shared
/// site.  Scale picks up (2*pi)^d * det K with K the inverse of the
/// interface block; the new coupling is the corresponding Schur
/// complement.  Throws NumericalFailure when the interface block is
/// ill-conditioned.
GaussianWeight glue(const GaussianWeight& w1, const GaussianWeight& w2);

/// Integrate a boundary density against the left slot of a weight.
BoundaryWeight act_left(const BoundaryWeight& b, const GaussianWeight& w);

/// Integrate a weight against a boundary density on the right slot.
BoundaryWeight act_right(const GaussianWeight& w, const BoundaryWeight& b);

/// Full pairing integral of two boundary densities:
/// (2*pi)^d * beta * beta' * det(B + B')^{-1}.
double pair(const BoundaryWeight& bl, const BoundaryWeight& br);

/// n-fold glue of a weight with itself; n = 1 returns the weight.
GaussianWeight schur_power(const GaussianWeight& w, int n);

/// Rescale both densities so that pair(bl, br) == 1, splitting the scale
/// evenly: beta = sqrt(det(B_L + B_R) / (2*pi)^d) on each side.
std::pair<BoundaryWeight, BoundaryWeight>
normalize_pair(const BoundaryWeight& bl, const BoundaryWeight& br);

/// Block-tridiagonal precision matrix of a homogeneous chain with P edges
/// and boundary matrices bl, br: corners bl + A_LL and A_RR + br, interior
/// diagonal A_RR + A_LL, off-diagonals A_LR above and A_RL below.
Matrix chain_precision(const GaussianWeight& w, const Matrix& bl,
                       const Matrix& br, int p);

/// Partition function of the homogeneous chain with P edges, computed two
/// independent ways (repeated boundary action vs. dense determinant) and
/// cross-checked to relative tolerance tol.
double partition_function(const GaussianWeight& w, const BoundaryWeight& bl,
                          const BoundaryWeight& br, int p, double tol = 1e-8);

} // namespace eigenbc
