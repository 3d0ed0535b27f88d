#include "eigenbc/szego.hpp"

#include <cmath>
#include <limits>

#include "eigenbc/invariant.hpp"
#include "eigenbc/numkit.hpp"

namespace eigenbc {

namespace {

constexpr int kGridCheck = 512;

double real_det(const Matrix& m, const char* who)
{
    const Complex det = Eigen::PartialPivLU<Matrix>(m).determinant();
    if (std::abs(det.imag()) > 1e-8 * (1.0 + std::abs(det)))
        throw NumericalFailure(std::string(who) + ": determinant has a nonreal part");
    return det.real();
}

} // namespace

TrigPolySymbol::TrigPolySymbol(std::vector<Matrix> coeffs)
    : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty())
        throw ValidationError("TrigPolySymbol: need at least the constant coefficient");
    const Index d = coeffs_[0].rows();
    for (const Matrix& c : coeffs_)
        if (c.rows() != d || c.cols() != d)
            throw ValidationError("TrigPolySymbol: coefficient dimensions disagree");
    if ((coeffs_[0] - coeffs_[0].adjoint()).norm() >
        numkit::kStructuralTol * (1.0 + coeffs_[0].norm()))
        throw ValidationError("TrigPolySymbol: constant coefficient must be Hermitian");

    for (int j = 0; j < kGridCheck; ++j) {
        const Matrix v = eval(2.0 * M_PI * j / kGridCheck);
        if (!numkit::is_hermitian_pd(v))
            throw ValidationError(
                "TrigPolySymbol: symbol is not Hermitian positive definite on the circle");
    }
}

Matrix TrigPolySymbol::coeff(long k) const
{
    const long n = order();
    if (k > n || k < -n)
        return Matrix::Zero(dim(), dim());
    if (k >= 0)
        return coeffs_[static_cast<size_t>(k)];
    return coeffs_[static_cast<size_t>(-k)].adjoint();
}

Matrix TrigPolySymbol::eval(double theta) const
{
    Matrix acc = coeffs_[0];
    for (int k = 1; k <= order(); ++k) {
        const Complex phase = std::polar(1.0, k * theta);
        acc += coeffs_[k] * phase + coeffs_[k].adjoint() * std::conj(phase);
    }
    return acc;
}

LaurentSymbol TrigPolySymbol::laurent() const
{
    if (order() != 1)
        throw ValidationError("TrigPolySymbol: Laurent view requires order 1");
    return {coeffs_[1].adjoint(), coeffs_[0], coeffs_[1]};
}

CorrectedToeplitz corrected_toeplitz(const TrigPolySymbol& sym, int p)
{
    if (p < 1)
        throw ValidationError("corrected_toeplitz: truncation must be >= 1");
    if (sym.order() != 1)
        throw ValidationError("corrected_toeplitz: symbol must have order 1");
    const Index d = sym.dim();
    if (numkit::numerical_rank(sym.coeff(1)) != d)
        throw ValidationError("corrected_toeplitz: order-one coefficient must be full rank");

    const LaurentSymbol laurent = sym.laurent();
    const SymbolSpectrum spectrum = compute_spectrum(laurent);
    auto [forward, backward] = transfer_matrices(spectrum);
    const Matrix gr = sym.coeff(1) * forward;
    const Matrix gl = sym.coeff(-1) * backward;

    const Matrix mean = numkit::circle_quadrature([&](double theta) {
        Matrix cell(1, 1);
        cell(0, 0) = std::log(real_det(sym.eval(theta), "corrected_toeplitz"));
        return cell;
    });
    const double growth = std::exp(mean(0, 0).real());
    const double kappa = real_det(gl + gr + sym.coeff(0), "corrected_toeplitz");

    BlockToeplitz bt;
    bt.block_dim = d;
    bt.trunc = p;
    for (int k = -p; k <= p; ++k)
        bt.coeffs.push_back(sym.coeff(k));
    bt.corner_left = gl;
    bt.corner_right = gr;
    return CorrectedToeplitz{std::move(bt), growth, kappa};
}

TrigPolySymbol block_reduce(const TrigPolySymbol& sym)
{
    const int n = sym.order();
    if (n < 2)
        throw ValidationError("block_reduce: blocking requires order >= 2");
    const Index d = sym.dim();
    const Index nd = n * d;

    Matrix b0(nd, nd), b1(nd, nd);
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
            b0.block(k * d, l * d, d, d) = sym.coeff(k - l);
            b1.block(k * d, l * d, d, d) = sym.coeff(k - l - n);
        }
    if (numkit::numerical_rank(b1) != nd)
        throw ValidationError("block_reduce: blocked order-one coefficient is singular");
    // the TrigPolySymbol constructor re-checks positive-definiteness on
    // the circle and names that failure
    return TrigPolySymbol({std::move(b0), std::move(b1)});
}

double plain_toeplitz_det(const TrigPolySymbol& sym, int p)
{
    if (p < 1)
        throw ValidationError("plain_toeplitz_det: truncation must be >= 1");
    BlockToeplitz bt;
    bt.block_dim = sym.dim();
    bt.trunc = p;
    for (int k = -p; k <= p; ++k)
        bt.coeffs.push_back(sym.coeff(k));
    return real_det(bt.dense(), "plain_toeplitz_det");
}

std::vector<AsymptoticRow> asymptotic_report(const TrigPolySymbol& sym,
                                             int pmax)
{
    if (pmax < 4)
        throw ValidationError("asymptotic_report: need pmax >= 4");
    std::vector<AsymptoticRow> rows;
    rows.reserve(pmax);
    for (int p = 1; p <= pmax; ++p) {
        const CorrectedToeplitz ct = corrected_toeplitz(sym, p);
        const double corrected = real_det(ct.matrix.dense(), "asymptotic_report");
        const double plain = plain_toeplitz_det(sym, p);
        rows.push_back({p, plain, corrected, plain / corrected});
    }
    double prev_diff = std::numeric_limits<double>::infinity();
    for (int p = 8; p + 1 <= pmax; ++p) {
        const double diff = std::abs(rows[p].ratio - rows[p - 1].ratio);
        const double floor = 1e-12 * std::abs(rows[p].ratio);
        if (diff > floor && diff > prev_diff * (1.0 + 1e-6))
            throw NumericalFailure("asymptotic_report: determinant ratio does not converge");
        prev_diff = std::max(diff, floor);
    }
    return rows;
}

} // namespace eigenbc
