#pragma once

#include <vector>

#include "eigenbc/types.hpp"

namespace eigenbc {

/// Banded or dense block matrix constant along block diagonals, built from
/// a coefficient sequence C_{-P}..C_{P}, optionally with corner
/// corrections added to the first and last diagonal block.
///
/// The dense layout places coefficient C_{l-k} at block (k, l), so the
/// super-diagonal carries C_{+1}; with the coefficients of a weight's
/// symbol this reproduces the chain precision matrix exactly.
struct BlockToeplitz {
    Index block_dim = 0;
    int trunc = 0;                    // P; the dense matrix has P+1 block rows
    std::vector<Matrix> coeffs;       // coeffs[j] holds C_{j-P}
    Matrix corner_left, corner_right; // size 0 when absent

    const Matrix& coeff(long k) const;
    bool has_corners() const { return corner_left.size() > 0; }
    Matrix dense() const;
};

} // namespace eigenbc
