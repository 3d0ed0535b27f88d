#pragma once

#include <vector>

#include "eigenbc/block_toeplitz.hpp"
#include "eigenbc/symbol.hpp"
#include "eigenbc/types.hpp"

namespace eigenbc {

/// Matrix-valued trigonometric polynomial, Hermitian positive definite on
/// the unit circle.  Stored through its coefficients for k = 0..N; the
/// negative coefficients are the adjoints.
class TrigPolySymbol {
public:
    /// coeffs = [Psi_0, Psi_1, ..., Psi_N].  Validates Hermitian Psi_0 and
    /// positive-definiteness on a 512-point circle grid.
    explicit TrigPolySymbol(std::vector<Matrix> coeffs);

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    Index dim() const { return coeffs_[0].rows(); }

    /// Psi_k; adjoint for negative k, zero beyond the order.
    Matrix coeff(long k) const;

    Matrix eval(double theta) const;

    /// The order-1 view lower/center/upper = Psi_{-1}/Psi_0/Psi_1.
    LaurentSymbol laurent() const;

private:
    std::vector<Matrix> coeffs_;
};

/// Toeplitz truncation with rank-d corner corrections that make the
/// determinant exactly geometric, together with the growth factor g and
/// the constant kappa of the identity  det = g^P * kappa.
struct CorrectedToeplitz {
    BlockToeplitz matrix;  // corners hold the corrections
    double growth; // g = exp of the circle average of log det
    double kappa;  // det(G_L + G_R + Psi_0)
};

/// Corner corrections G_L = Psi_{-1} * backward and G_R = Psi_1 * forward
/// from the spectrum of the order-1 symbol.  Requires Psi_1 full rank.
CorrectedToeplitz corrected_toeplitz(const TrigPolySymbol& sym, int p);

/// Reduce an order-N >= 2 symbol to an order-1 symbol in dimension N*d by
/// blocking N consecutive sites:
///   blocked_0 = (Psi_{k-l}),  blocked_1 = (Psi_{k-l-N}),  k,l = 0..N-1.
/// The result must again be Hermitian PD on the circle with invertible
/// order-one coefficient; violations name the failing check.
TrigPolySymbol block_reduce(const TrigPolySymbol& sym);

/// Determinant of the uncorrected truncation (dense).
double plain_toeplitz_det(const TrigPolySymbol& sym, int p);

struct AsymptoticRow {
    int p;
    double plain;
    double corrected;
    double ratio; // plain / corrected
};

/// Plain vs corrected determinants for P = 1..pmax.  Asserts that the
/// ratio converges: successive differences shrink monotonically beyond
/// P = 8 (until they hit roundoff).
std::vector<AsymptoticRow> asymptotic_report(const TrigPolySymbol& sym,
                                             int pmax);

} // namespace eigenbc
