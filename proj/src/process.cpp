#include "eigenbc/process.hpp"

#include <cmath>

#include "eigenbc/gaussian_stream.hpp"
#include "eigenbc/numkit.hpp"

namespace eigenbc {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kCheckTol = 1e-8;

Matrix matrix_power(const Matrix& m, int k)
{
    Matrix acc = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i)
        acc = acc * m;
    return acc;
}

bool block_diagonals_constant(const Matrix& sigma, Index d, int p)
{
    const double scale = 1.0 + sigma.norm();
    for (int m = -p; m <= p; ++m) {
        const int k0 = m >= 0 ? 0 : -m;
        const Matrix ref = sigma.block(k0 * d, (k0 + m) * d, d, d);
        for (int k = k0; k + std::max(m, 0) <= p && k >= -std::min(m, 0); ++k) {
            const int l = k + m;
            if (l < 0 || l > p)
                continue;
            if ((sigma.block(k * d, l * d, d, d) - ref).norm() >
                kCheckTol * scale)
                return false;
        }
    }
    return true;
}

} // namespace

ChainLaw assemble_chain(const GaussianWeight& w, const BoundaryWeight& bl,
                        const BoundaryWeight& br, int p)
{
    if (p < 1)
        throw ValidationError("assemble_chain: chain length must be >= 1");
    Matrix q = chain_precision(w, bl.matrix(), br.matrix(), p);
    if (!numkit::is_hermitian_pd(q))
        throw ValidationError("assemble_chain: precision matrix is not Hermitian positive definite");
    Matrix sigma = numkit::hpd_inverse(q);
    const Index n = q.rows();
    if ((sigma * q - Matrix::Identity(n, n)).norm() > kCheckTol * (1.0 + double(n)))
        throw NumericalFailure("assemble_chain: covariance does not invert the precision");
    const bool toeplitz = block_diagonals_constant(sigma, w.dim(), p);
    return ChainLaw{p, std::move(q), std::move(sigma), bl, br, toeplitz};
}

BlockToeplitz covariance_toeplitz(const SymbolSpectrum& s, int p)
{
    if (p < 1)
        throw ValidationError("covariance_toeplitz: truncation must be >= 1");
    BlockToeplitz bt;
    bt.block_dim = s.dim();
    bt.trunc = p;
    bt.coeffs.reserve(2 * p + 1);
    for (int k = -p; k <= p; ++k)
        bt.coeffs.push_back(fourier_coefficient(s, k).value);
    return bt;
}

std::vector<Vector> sample(const ChainLaw& law, int n, std::uint64_t seed)
{
    if (n < 1)
        throw ValidationError("sample: draw count must be >= 1");
    Eigen::LLT<Matrix> llt(law.covariance);
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("sample: covariance factorization failed");
    const Matrix l = llt.matrixL();
    const Index dim = law.covariance.rows();

    detail::GaussianStream stream(seed);
    std::vector<Vector> draws;
    draws.reserve(n);
    for (int i = 0; i < n; ++i) {
        Vector xi(dim);
        for (Index j = 0; j < dim; ++j)
            xi(j) = stream.standard_complex();
        draws.push_back(l * xi);
    }
    return draws;
}

Matrix conditional_mean_coefficient(const InvariantBoundaries& ib, int lag,
                                    Side direction)
{
    if (lag < 0)
        throw ValidationError("conditional_mean_coefficient: lag must be >= 0");
    return matrix_power(direction == Side::Right ? ib.forward : ib.backward,
                        lag);
}

Matrix conditional_covariance(const InvariantBoundaries& ib,
                              const SymbolSpectrum& s, int k1, int k2)
{
    if (k1 < 0 || k2 < k1)
        throw ValidationError("conditional_covariance: need 0 <= k1 <= k2");
    const Matrix c0 = fourier_coefficient(s, 0).value;
    return (matrix_power(ib.backward, k2 - k1) -
            matrix_power(ib.forward, k1) * matrix_power(ib.backward, k2)) *
           c0;
}

ConditionalLaw conditional_law(const InvariantBoundaries& ib,
                               const SymbolSpectrum& s, int k1, int k2)
{
    return ConditionalLaw{conditional_mean_coefficient(ib, k1, Side::Right),
                          conditional_mean_coefficient(ib, k2, Side::Right),
                          conditional_covariance(ib, s, k1, k2)};
}

PeriodicChainLaw periodic_chain(const GaussianWeight& w, int p)
{
    if (p < 2)
        throw ValidationError("periodic_chain: ring size must be >= 2");
    const Index d = w.dim();
    const LaurentSymbol sym = LaurentSymbol::from_weight(w);

    Matrix q = Matrix::Zero(d * p, d * p);
    for (int k = 0; k < p; ++k) {
        q.block(k * d, k * d, d, d) += sym.center;
        q.block(k * d, ((k + 1) % p) * d, d, d) += sym.upper;
        q.block(k * d, ((k + p - 1) % p) * d, d, d) += sym.lower;
    }

    std::vector<Matrix> modes;
    modes.reserve(p);
    double log_z = p * std::log(w.alpha() * std::pow(kTwoPi, double(d)));
    for (int k = 0; k < p; ++k) {
        modes.push_back(sym.eval(std::polar(1.0, kTwoPi * k / p)));
        const Complex det =
            Eigen::PartialPivLU<Matrix>(modes.back()).determinant();
        if (!(det.real() > 0.0) || std::abs(det.imag()) > 1e-8 * std::abs(det))
            throw NumericalFailure("periodic_chain: mode determinant is not positive");
        log_z -= std::log(det.real());
    }

    // Fourier conjugation must block-diagonalize the precision
    Matrix u(d * p, d * p);
    for (int j = 0; j < p; ++j)
        for (int k = 0; k < p; ++k)
            u.block(j * d, k * d, d, d) =
                std::polar(1.0 / std::sqrt(double(p)), kTwoPi * j * k / p) *
                Matrix::Identity(d, d);
    Matrix diag = u.adjoint() * q * u;
    for (int k = 0; k < p; ++k)
        diag.block(k * d, k * d, d, d) -= modes[k];
    if (diag.norm() > kCheckTol * (1.0 + q.norm()))
        throw NumericalFailure("periodic_chain: Fourier conjugation is not block-diagonal");

    return PeriodicChainLaw{p, std::move(q), std::move(modes), std::exp(log_z)};
}

} // namespace eigenbc
