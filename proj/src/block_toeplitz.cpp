#include "eigenbc/block_toeplitz.hpp"

namespace eigenbc {

const Matrix& BlockToeplitz::coeff(long k) const
{
    const long j = k + trunc;
    if (j < 0 || j >= static_cast<long>(coeffs.size()))
        throw ValidationError("BlockToeplitz: coefficient index out of range");
    return coeffs[static_cast<size_t>(j)];
}

Matrix BlockToeplitz::dense() const
{
    const Index d = block_dim;
    const Index n = d * (trunc + 1);
    Matrix m(n, n);
    for (int k = 0; k <= trunc; ++k)
        for (int l = 0; l <= trunc; ++l)
            m.block(k * d, l * d, d, d) = coeff(l - k);
    if (has_corners()) {
        m.topLeftCorner(d, d) += corner_left;
        m.bottomRightCorner(d, d) += corner_right;
    }
    return m;
}

} // namespace eigenbc
