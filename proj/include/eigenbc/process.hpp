#pragma once

#include <cstdint>
#include <vector>

#include "eigenbc/block_toeplitz.hpp"
#include "eigenbc/invariant.hpp"
#include "eigenbc/symbol.hpp"
#include "eigenbc/types.hpp"
#include "eigenbc/weights.hpp"

namespace eigenbc {

/// Law of a finite chain with P edges: block-tridiagonal precision matrix,
/// its dense inverse, and the boundary pair that produced it.
struct ChainLaw {
    int length; // P
    Matrix precision;
    Matrix covariance;
    BoundaryWeight left;
    BoundaryWeight right;
    bool toeplitz; // covariance constant along block diagonals
};

ChainLaw assemble_chain(const GaussianWeight& w, const BoundaryWeight& bl,
                        const BoundaryWeight& br, int p);

/// Covariance of P+1 consecutive sites under invariant boundaries,
/// assembled from closed-form Fourier coefficients of the inverse symbol.
BlockToeplitz covariance_toeplitz(const SymbolSpectrum& s, int p);

/// n i.i.d. circularly-symmetric complex Gaussian draws with the law's
/// covariance, through a Cholesky factor.  Deterministic given the seed;
/// there is no ambient generator.
std::vector<Vector> sample(const ChainLaw& law, int n, std::uint64_t seed);

/// E[X_{l+k} | X_l] = forward^k X_l; backward^k for the reversed direction.
Matrix conditional_mean_coefficient(const InvariantBoundaries& ib, int lag,
                                    Side direction);

/// Cov(X_{l+k1}, X_{l+k2} | X_l)
///   = (backward^{k2-k1} - forward^{k1} backward^{k2}) C_0,  0 <= k1 <= k2.
Matrix conditional_covariance(const InvariantBoundaries& ib,
                              const SymbolSpectrum& s, int k1, int k2);

struct ConditionalLaw {
    Matrix mean_k1; // forward^{k1}
    Matrix mean_k2; // forward^{k2}
    Matrix covariance;
};

ConditionalLaw conditional_law(const InvariantBoundaries& ib,
                               const SymbolSpectrum& s, int k1, int k2);

/// Law of a chain on the ring of size P: block-circulant precision,
/// its symbol values at the P-th roots of unity, and the partition
/// function as the product over modes.  Construction verifies that the
/// discrete Fourier conjugation block-diagonalizes the precision.
struct PeriodicChainLaw {
    int length; // P
    Matrix precision;
    std::vector<Matrix> modes;
    double partition;
};

PeriodicChainLaw periodic_chain(const GaussianWeight& w, int p);

} // namespace eigenbc
