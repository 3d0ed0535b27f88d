#pragma once

#include <vector>

#include "eigenbc/types.hpp"
#include "eigenbc/weights.hpp"

namespace eigenbc {

/// Laurent matrix polynomial  S(z) = lower/z + center + upper*z.
/// For a Gaussian weight these are the sub-diagonal, diagonal and
/// super-diagonal blocks of the translation-invariant precision operator
/// of the chain.  Hermitian on the unit circle when lower == upper*.
struct LaurentSymbol {
    Matrix lower;  // coefficient of z^{-1}
    Matrix center; // coefficient of z^0
    Matrix upper;  // coefficient of z^{+1}

    Index dim() const { return center.rows(); }

    Matrix eval(Complex z) const;

    /// upper - lower / z^2
    Matrix derivative(Complex z) const;

    static LaurentSymbol from_weight(const GaussianWeight& w);
};

/// A point where the symbol is singular, with a unit vector spanning the
/// kernel there.  The kernel vector's largest coordinate is made real
/// positive so output is reproducible; all residue products are invariant
/// under this choice.
struct SymbolZero {
    Complex location;
    Vector kernel;
};

/// Spectral data of a Laurent symbol: the zeros split by the unit circle
/// (outside[i] is the partner 1/conj(inside[i]) of inside[i]), the
/// rank-one residue decomposition of the inverse, and in the
/// rank-deficient case the kernel bases of the off-diagonal coefficients
/// together with the constant tail of the partial fraction.
class SymbolSpectrum {
public:
    Index dim() const { return dim_; }
    Index defect() const { return defect_; }
    Index pair_count() const { return static_cast<Index>(inside_.size()); }

    const std::vector<SymbolZero>& inside() const { return inside_; }
    const std::vector<SymbolZero>& outside() const { return outside_; }

    Complex residue_inside(Index i) const { return alpha_in_[i]; }
    Complex residue_outside(Index i) const { return alpha_out_[i]; }
    const Matrix& projector_inside(Index i) const { return proj_in_[i]; }
    const Matrix& projector_outside(Index i) const { return proj_out_[i]; }

    /// Orthonormal basis (d x defect) of the kernel of the upper / lower
    /// coefficient; empty columns in the full-rank case.
    const Matrix& kernel_upper() const { return ker_upper_; }
    const Matrix& kernel_lower() const { return ker_lower_; }

    /// Leading coefficient of det(z * S(z)).
    Complex leading_coefficient() const { return p_top_; }

    /// Constant term of the partial fraction of S(z)^{-1}; zero when the
    /// symbol is full rank.
    const Matrix& tail_constant() const { return tail_; }

    const LaurentSymbol& symbol() const { return symbol_; }

    friend SymbolSpectrum compute_spectrum(const LaurentSymbol& sym);

private:
    LaurentSymbol symbol_;
    Index dim_ = 0;
    Index defect_ = 0;
    std::vector<SymbolZero> inside_, outside_;
    std::vector<Complex> alpha_in_, alpha_out_;
    std::vector<Matrix> proj_in_, proj_out_;
    Matrix ker_upper_, ker_lower_;
    Complex p_top_{0.0, 0.0};
    Matrix tail_;
};

/// Solve the quadratic pencil  upper*z^2 + center*z + lower  through a
/// generalized companion linearization, classify its eigenvalues, and
/// assemble the residue data.  Eigenvalues at 0 and infinity (exactly
/// defect() of each) are the rank-deficiency signature and are discarded.
/// Throws AssumptionViolation on multiple zeros or zeros hugging the unit
/// circle, NumericalFailure when the solve or the pairing breaks down.
SymbolSpectrum compute_spectrum(const LaurentSymbol& sym);
SymbolSpectrum compute_spectrum(const GaussianWeight& w);

/// S(z)^{-1} through the residue decomposition; z must stay at distance
/// > 1e-8 from every zero.
Matrix spectral_inverse(const SymbolSpectrum& s, Complex z);

struct FourierCoefficient {
    long index;
    Matrix value;
};

/// Closed-form Fourier coefficient of S^{-1} on the unit circle, assembled
/// from the residue data (no quadrature).
FourierCoefficient fourier_coefficient(const SymbolSpectrum& s, long k);

/// The weight with the roles of left and right vertex exchanged (blocks
/// LL <-> RR and LR <-> RL), same scale.
GaussianWeight flip(const GaussianWeight& w);

} // namespace eigenbc
