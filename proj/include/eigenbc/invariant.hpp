#pragma once

#include <utility>
#include <vector>

#include "eigenbc/symbol.hpp"
#include "eigenbc/types.hpp"
#include "eigenbc/weights.hpp"

namespace eigenbc {

enum class Side { Left, Right };

/// Boundary data that is invariant under gluing one more edge.
///
/// forward is the contracting transfer map of the chain direction (its
/// eigenvectors are the kernel vectors at the inside zeros, eigenvalues
/// the zeros themselves, and it annihilates the kernel of the lower
/// coefficient); backward plays the same role for the reversed direction.
struct InvariantBoundaries {
    Matrix forward;   // powers give E[X_{l+k} | X_l]
    Matrix backward;  // powers give E[X_{l-k} | X_l]
    BoundaryWeight left;
    BoundaryWeight right;
    double eigenvalue;      // per-edge factor applied to the boundary density
    double free_energy;     // log(eigenvalue)
    double basis_condition; // worst conditioning of the zero-indexed bases
};

/// (forward, backward) assembled by change of basis from the completed
/// zero-indexed families, together with the worse of the two basis
/// condition numbers.
std::pair<Matrix, Matrix> transfer_matrices(const SymbolSpectrum& s,
                                            double* condition = nullptr);

/// Build the invariant boundary pair from the spectrum, validate
/// positive-definiteness, and cross-check the eigenvalue between the
/// determinant route and (in the full-rank case) the product of the
/// inside zeros.  The returned boundary densities are normalized so their
/// pairing integral is one.
InvariantBoundaries invariant_boundaries(const GaussianWeight& w,
                                         const SymbolSpectrum& s);

/// Residual of the fixed-point equation satisfied by an invariant
/// boundary matrix:
///   right: || b - (A_LL - A_LR (A_RR + b)^{-1} A_RL) ||
///   left:  || b - (A_RR - A_RL (b + A_LL)^{-1} A_LR) ||
double verify_invariance(const GaussianWeight& w, const Matrix& b, Side side);

enum class FreeEnergyMethod {
    Eigenvalue, // log of the per-edge eigenvalue
    Integral,   // circle average of log det of the symbol
    Dft         // (1/P) log of the ring partition function
};

/// Free energy per edge by the chosen route; p is the ring size for the
/// Dft method (ignored otherwise) and must be >= 2 there.
double free_energy(const GaussianWeight& w, const SymbolSpectrum& s,
                   FreeEnergyMethod method, int p = 0);

/// Decaying solution of the interior three-term recurrence with value x0
/// at the boundary site: x_k = forward^k x0 (right) or backward^k x0
/// (left), k = 0..steps.
std::vector<Vector> dirichlet_solve(const InvariantBoundaries& ib,
                                    const Vector& x0, int steps, Side side);

} // namespace eigenbc
