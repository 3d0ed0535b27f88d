#include "eigenbc/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "eigenbc/numkit.hpp"

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace eigenbc {

namespace {

constexpr double kCircleBand = 1e-8;     // exclusion band around |z| = 1
constexpr double kClusterTol = 1e-8;     // relative zero-clustering tolerance
constexpr double kPairTol = 1e-8;        // |w * conj(partner) - 1| bound
constexpr double kKernelTol = 1e-8;      // kernel residual / dimension bound
constexpr double kSeparation = 1e-6;     // structural 0/inf vs finite zeros

struct PencilEigenvalue {
    Complex alpha;
    Complex beta;
    double magnitude; // |alpha| / |beta|, +inf for beta == 0
};

/// Eigenvalues of the quadratic pencil  upper*z^2 + center*z + lower
/// through the companion linearization
///   [0 I; -lower -center] v = z [I 0; 0 upper] v,
/// sorted by magnitude.  The coefficient matrices are never inverted, so
/// rank-deficient upper/lower show up as eigenvalues at infinity and zero.
std::vector<PencilEigenvalue> pencil_eigenvalues(const LaurentSymbol& sym)
{
    const Index d = sym.dim();
    const Index n = 2 * d;
    Matrix a = Matrix::Zero(n, n);
    Matrix b = Matrix::Zero(n, n);
    a.topRightCorner(d, d) = Matrix::Identity(d, d);
    a.bottomLeftCorner(d, d) = -sym.lower;
    a.bottomRightCorner(d, d) = -sym.center;
    b.topLeftCorner(d, d) = Matrix::Identity(d, d);
    b.bottomRightCorner(d, d) = sym.upper;

    Vector alpha(n), beta(n);
    const int info = LAPACKE_zggev(
        LAPACK_COL_MAJOR, 'N', 'N', static_cast<int>(n), a.data(),
        static_cast<int>(n), b.data(), static_cast<int>(n), alpha.data(),
        beta.data(), nullptr, 1, nullptr, 1);
    if (info != 0)
        throw NumericalFailure("compute_spectrum: companion pencil solve failed");

    std::vector<PencilEigenvalue> eigs(n);
    for (Index i = 0; i < n; ++i) {
        eigs[i].alpha = alpha(i);
        eigs[i].beta = beta(i);
        eigs[i].magnitude = beta(i) == Complex(0, 0)
                                ? std::numeric_limits<double>::infinity()
                                : std::abs(alpha(i)) / std::abs(beta(i));
    }
    std::sort(eigs.begin(), eigs.end(),
              [](const PencilEigenvalue& x, const PencilEigenvalue& y) {
                  return x.magnitude < y.magnitude;
              });
    return eigs;
}

/// Unit kernel vector of m, phase-fixed so the first non-negligible
/// coordinate is real positive.  sigma receives the singular values.
Vector kernel_vector(const Matrix& m, Eigen::VectorXd* sigma)
{
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    *sigma = svd.singularValues();
    Vector u = svd.matrixV().col(m.cols() - 1);
    const double umax = u.cwiseAbs().maxCoeff();
    for (Index i = 0; i < u.size(); ++i) {
        if (std::abs(u(i)) > 1e-12 * umax) {
            u *= std::conj(u(i)) / std::abs(u(i));
            break;
        }
    }
    return u;
}

/// Orthonormal basis of the kernel of m (d x defect); no columns when the
/// defect is zero.
Matrix kernel_basis(const Matrix& m, Index defect)
{
    const Index d = m.cols();
    if (defect == 0)
        return Matrix(d, 0);
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
    return svd.matrixV().rightCols(defect);
}

/// Coefficients of det(z*S(z)) (degree <= 2d) and of adj(z*S(z))
/// (degree <= 2d-2) by DFT interpolation on the unit circle, where z*S(z)
/// is polynomial and S is invertible.  Exact up to roundoff because the
/// grid is finer than the degree.
void interpolate_det_adj(const LaurentSymbol& sym,
                         std::vector<Complex>* det_coeffs,
                         std::vector<Matrix>* adj_coeffs)
{
    const Index d = sym.dim();
    const int deg_det = static_cast<int>(2 * d);
    const int deg_adj = std::max(0, static_cast<int>(2 * d - 2));
    const int m = 4 * (deg_det + 1);

    det_coeffs->assign(deg_det + 1, Complex(0, 0));
    adj_coeffs->assign(deg_adj + 1, Matrix::Zero(d, d));
    for (int j = 0; j < m; ++j) {
        const Complex z = std::polar(1.0, 2.0 * M_PI * j / m);
        Eigen::PartialPivLU<Matrix> lu(sym.eval(z));
        const Complex det_psi =
            std::pow(z, static_cast<double>(d)) * lu.determinant();
        const Matrix adj_psi = det_psi / z * lu.inverse();
        for (int l = 0; l <= deg_det; ++l)
            (*det_coeffs)[l] += det_psi * std::pow(std::conj(z), l) / double(m);
        for (int l = 0; l <= deg_adj; ++l)
            (*adj_coeffs)[l] += adj_psi * std::pow(std::conj(z), l) / double(m);
    }
}

} // namespace

Matrix LaurentSymbol::eval(Complex z) const
{
    if (z == Complex(0.0, 0.0))
        throw ValidationError("LaurentSymbol::eval: z must be nonzero");
    return center + upper * z + lower / z;
}

Matrix LaurentSymbol::derivative(Complex z) const
{
    if (z == Complex(0.0, 0.0))
        throw ValidationError("LaurentSymbol::derivative: z must be nonzero");
    return upper - lower / (z * z);
}

LaurentSymbol LaurentSymbol::from_weight(const GaussianWeight& w)
{
    return {w.rl(), w.ll() + w.rr(), w.lr()};
}

SymbolSpectrum compute_spectrum(const LaurentSymbol& sym)
{
    const Index d = sym.dim();
    if (sym.lower.rows() != d || sym.lower.cols() != d ||
        sym.center.cols() != d || sym.upper.rows() != d ||
        sym.upper.cols() != d)
        throw ValidationError("compute_spectrum: coefficient dimensions disagree");

    const Index rank_upper = numkit::numerical_rank(sym.upper);
    if (rank_upper != numkit::numerical_rank(sym.lower))
        throw ValidationError(
            "compute_spectrum: lower and upper coefficients have different rank");
    const Index defect = d - rank_upper;
    const double scale =
        sym.lower.norm() + sym.center.norm() + sym.upper.norm();

    SymbolSpectrum out;
    out.symbol_ = sym;
    out.dim_ = d;
    out.defect_ = defect;
    out.ker_upper_ = kernel_basis(sym.upper, defect);
    out.ker_lower_ = kernel_basis(sym.lower, defect);

    // The 2*defect eigenvalues at 0 and infinity are the rank-deficiency
    // signature; they must be cleanly separated from the finite zeros.
    const auto eigs = pencil_eigenvalues(sym);
    const Index n = static_cast<Index>(eigs.size());
    if (defect > 0) {
        if (!(eigs[defect - 1].magnitude <= kSeparation * eigs[defect].magnitude))
            throw NumericalFailure(
                "compute_spectrum: eigenvalues at zero do not match the rank deficiency");
        if (!(eigs[n - defect].magnitude * kSeparation >=
              eigs[n - defect - 1].magnitude))
            throw NumericalFailure(
                "compute_spectrum: eigenvalues at infinity do not match the rank deficiency");
    } else if (eigs.front().magnitude == 0.0 ||
               std::isinf(eigs.back().magnitude)) {
        throw NumericalFailure(
            "compute_spectrum: pencil has singular eigenvalues but the symbol is full rank");
    }

    std::vector<Complex> zeros;
    for (Index i = defect; i < n - defect; ++i)
        zeros.push_back(eigs[i].alpha / eigs[i].beta);

    for (const Complex& w : zeros)
        if (std::abs(std::abs(w) - 1.0) <= kCircleBand)
            throw AssumptionViolation(
                "compute_spectrum: zero inside the unit-circle exclusion band");
    for (size_t i = 0; i < zeros.size(); ++i)
        for (size_t j = i + 1; j < zeros.size(); ++j)
            if (std::abs(zeros[i] - zeros[j]) <=
                kClusterTol * std::max(std::abs(zeros[i]), std::abs(zeros[j])))
                throw AssumptionViolation(
                    "compute_spectrum: zero of multiplicity above one");

    std::vector<Complex> in, outz;
    for (const Complex& w : zeros)
        (std::abs(w) < 1.0 ? in : outz).push_back(w);
    if (static_cast<Index>(in.size()) != d - defect ||
        static_cast<Index>(outz.size()) != d - defect)
        throw NumericalFailure(
            "compute_spectrum: zeros do not split evenly across the unit circle");

    std::sort(in.begin(), in.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });

    // pair each inside zero with the outside zero nearest to 1/conj(w)
    std::vector<bool> used(outz.size(), false);
    std::vector<Complex> partner(in.size());
    for (size_t i = 0; i < in.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        size_t pick = 0;
        for (size_t j = 0; j < outz.size(); ++j) {
            if (used[j])
                continue;
            const double err = std::abs(in[i] * std::conj(outz[j]) - 1.0);
            if (err < best) {
                best = err;
                pick = j;
            }
        }
        if (!(best <= kPairTol))
            throw NumericalFailure(
                "compute_spectrum: failed to pair a zero with its circle reflection");
        used[pick] = true;
        partner[i] = outz[pick];
    }

    for (size_t i = 0; i < in.size(); ++i) {
        Eigen::VectorXd sv_in, sv_out;
        SymbolZero zi{in[i], kernel_vector(sym.eval(in[i]), &sv_in)};
        SymbolZero zo{partner[i], kernel_vector(sym.eval(partner[i]), &sv_out)};
        for (const auto* sv : {&sv_in, &sv_out}) {
            if ((*sv)(sv->size() - 1) > kKernelTol * scale)
                throw NumericalFailure(
                    "compute_spectrum: kernel residual too large at a zero");
            if (sv->size() >= 2 && (*sv)(sv->size() - 2) <= kKernelTol * scale)
                throw AssumptionViolation(
                    "compute_spectrum: kernel dimension above one at a zero");
        }
        out.inside_.push_back(std::move(zi));
        out.outside_.push_back(std::move(zo));
    }

    for (Index i = 0; i < out.pair_count(); ++i) {
        const auto& zi = out.inside_[i];
        const auto& zo = out.outside_[i];
        const Matrix deriv_in = sym.derivative(zi.location);
        const Matrix deriv_out = sym.derivative(zo.location);
        const Complex den_in = (zo.kernel.adjoint() * deriv_in * zi.kernel)(0, 0);
        const Complex den_out = (zi.kernel.adjoint() * deriv_out * zo.kernel)(0, 0);
        if (std::abs(den_in) <= 1e-10 * deriv_in.norm() ||
            std::abs(den_out) <= 1e-10 * deriv_out.norm())
            throw AssumptionViolation("compute_spectrum: degenerate residue pairing");
        out.alpha_in_.push_back(1.0 / den_in);
        out.alpha_out_.push_back(1.0 / den_out);
        out.proj_in_.push_back(zi.kernel * zo.kernel.adjoint());
        out.proj_out_.push_back(zo.kernel * zi.kernel.adjoint());
    }

    // completed families must span C^d
    for (int side = 0; side < 2; ++side) {
        Matrix v(d, d);
        for (Index i = 0; i < d - defect; ++i)
            v.col(i) = side == 0 ? out.inside_[i].kernel : out.outside_[i].kernel;
        v.rightCols(defect) = side == 0 ? out.ker_lower_ : out.ker_upper_;
        if (numkit::numerical_rank(v) != d)
            throw AssumptionViolation(
                "compute_spectrum: completed zero-indexed family does not span");
    }

    std::vector<Complex> det_coeffs;
    std::vector<Matrix> adj_coeffs;
    interpolate_det_adj(sym, &det_coeffs, &adj_coeffs);
    double pmax = 0.0;
    for (const Complex& p : det_coeffs)
        pmax = std::max(pmax, std::abs(p));
    // Genuine coefficients can sit many orders below pmax once zeros
    // spread (glued weights cube them); the interpolation noise floor is
    // near eps * pmax, so this still separates cleanly.
    const double degree_floor = 1e-12 * pmax;
    const Index k = defect;
    for (Index l = 0; l <= 2 * d; ++l) {
        const bool structural_zero = l < k || l > 2 * d - k;
        if (structural_zero && std::abs(det_coeffs[l]) > degree_floor)
            throw NumericalFailure(
                "compute_spectrum: determinant degree disagrees with the rank deficiency");
    }
    if (std::abs(det_coeffs[k]) <= degree_floor ||
        std::abs(det_coeffs[2 * d - k]) <= degree_floor)
        throw AssumptionViolation(
            "compute_spectrum: multiplicity at zero or infinity exceeds the rank deficiency");
    out.p_top_ = det_coeffs[2 * d - k];
    out.tail_ = k > 0 ? Matrix(adj_coeffs[2 * d - k - 1] / out.p_top_)
                      : Matrix(Matrix::Zero(d, d));

    return out;
}

SymbolSpectrum compute_spectrum(const GaussianWeight& w)
{
    return compute_spectrum(LaurentSymbol::from_weight(w));
}

Matrix spectral_inverse(const SymbolSpectrum& s, Complex z)
{
    for (const auto* list : {&s.inside(), &s.outside()})
        for (const auto& zero : *list)
            if (std::abs(z - zero.location) <= 1e-8)
                throw ValidationError("spectral_inverse: z is too close to a zero");
    Matrix acc = s.tail_constant();
    for (Index i = 0; i < s.pair_count(); ++i) {
        acc += s.residue_inside(i) / (z - s.inside()[i].location) *
               s.projector_inside(i);
        acc += s.residue_outside(i) / (z - s.outside()[i].location) *
               s.projector_outside(i);
    }
    return acc;
}

FourierCoefficient fourier_coefficient(const SymbolSpectrum& s, long k)
{
    const Index d = s.dim();
    Matrix acc = Matrix::Zero(d, d);
    if (k == 0) {
        for (Index i = 0; i < s.pair_count(); ++i)
            acc += s.residue_inside(i) / s.inside()[i].location *
                   s.projector_inside(i);
        acc += s.tail_constant();
    } else if (k > 0) {
        for (Index i = 0; i < s.pair_count(); ++i)
            acc -= s.residue_outside(i) /
                   std::pow(s.outside()[i].location, static_cast<double>(k + 1)) *
                   s.projector_outside(i);
    } else {
        for (Index i = 0; i < s.pair_count(); ++i)
            acc += std::pow(s.inside()[i].location, static_cast<double>(-k - 1)) *
                   s.residue_inside(i) * s.projector_inside(i);
    }
    return {k, std::move(acc)};
}

GaussianWeight flip(const GaussianWeight& w)
{
    const Index d = w.dim();
    Matrix a(2 * d, 2 * d);
    a.topLeftCorner(d, d) = w.rr();
    a.topRightCorner(d, d) = w.rl();
    a.bottomLeftCorner(d, d) = w.lr();
    a.bottomRightCorner(d, d) = w.ll();
    return GaussianWeight(w.alpha(), std::move(a));
}

} // namespace eigenbc
