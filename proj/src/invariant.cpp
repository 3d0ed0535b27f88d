#include "eigenbc/invariant.hpp"

#include <cmath>
#include <cstdio>

#include "eigenbc/numkit.hpp"

namespace eigenbc {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kCrossCheckTol = 1e-8;

Matrix from_eigenpairs(const std::vector<const Vector*>& vecs,
                       const std::vector<Complex>& vals, Index d,
                       const Matrix& kernel_completion, double* condition)
{
    Matrix v(d, d);
    Vector diag(d);
    const Index m = static_cast<Index>(vecs.size());
    for (Index i = 0; i < m; ++i) {
        v.col(i) = *vecs[i];
        diag(i) = vals[i];
    }
    v.rightCols(d - m) = kernel_completion;
    diag.tail(d - m).setZero();

    Eigen::JacobiSVD<Matrix> svd(v);
    const double cond =
        svd.singularValues()(0) / svd.singularValues()(d - 1);
    if (condition)
        *condition = std::max(*condition, cond);

    Eigen::PartialPivLU<Matrix> lu(v);
    return v * diag.asDiagonal() * lu.inverse();
}

double positive_log_det(const Matrix& m)
{
    Eigen::PartialPivLU<Matrix> lu(m);
    const Complex det = lu.determinant();
    if (!(det.real() > 0.0) ||
        std::abs(det.imag()) > 1e-8 * std::abs(det))
        throw NumericalFailure("free_energy: symbol determinant is not positive");
    return std::log(det.real());
}

} // namespace

std::pair<Matrix, Matrix> transfer_matrices(const SymbolSpectrum& s,
                                            double* condition)
{
    const Index d = s.dim();
    if (condition)
        *condition = 1.0;

    std::vector<const Vector*> vin, vout;
    std::vector<Complex> win, wout;
    for (Index i = 0; i < s.pair_count(); ++i) {
        vin.push_back(&s.inside()[i].kernel);
        win.push_back(s.inside()[i].location);
        vout.push_back(&s.outside()[i].kernel);
        wout.push_back(1.0 / s.outside()[i].location);
    }
    Matrix forward = from_eigenpairs(vin, win, d, s.kernel_lower(), condition);
    Matrix backward = from_eigenpairs(vout, wout, d, s.kernel_upper(), condition);
    return {std::move(forward), std::move(backward)};
}

InvariantBoundaries invariant_boundaries(const GaussianWeight& w,
                                         const SymbolSpectrum& s)
{
    if (w.dim() != s.dim())
        throw ValidationError("invariant_boundaries: dimension mismatch");
    const Index d = w.dim();

    double condition = 1.0;
    auto [forward, backward] = transfer_matrices(s, &condition);
    if (condition > 1e8)
        std::fprintf(stderr,
                     "invariant_boundaries: zero-indexed basis condition %.3e\n",
                     condition);

    const Matrix br = numkit::hermitian_part(w.ll() + w.lr() * forward);
    const Matrix bl = numkit::hermitian_part(w.rr() + w.rl() * backward);
    if (!numkit::is_hermitian_pd(br) || !numkit::is_hermitian_pd(bl))
        throw NumericalFailure(
            "invariant_boundaries: assembled boundary matrix is not Hermitian positive definite");

    const double pref = w.alpha() * std::pow(kTwoPi, static_cast<double>(d));
    const double lambda = pref / numkit::hpd_det(w.rr() + br);
    const double lambda_left = pref / numkit::hpd_det(bl + w.ll());
    if (std::abs(lambda - lambda_left) > kCrossCheckTol * lambda)
        throw NumericalFailure(
            "invariant_boundaries: left and right eigenvalue routes disagree");

    if (s.defect() == 0) {
        Complex prod(1.0, 0.0);
        for (Index i = 0; i < s.pair_count(); ++i)
            prod *= s.inside()[i].location;
        const Complex det_rl = Eigen::PartialPivLU<Matrix>(w.rl()).determinant();
        const Complex lambda_zeros = pref *
                                     std::pow(Complex(-1.0, 0.0),
                                              static_cast<double>(d)) *
                                     prod / det_rl;
        if (std::abs(lambda_zeros - lambda) > kCrossCheckTol * lambda)
            throw NumericalFailure(
                "invariant_boundaries: eigenvalue cross-check against the zero product failed");
    }

    auto [nl, nr] = normalize_pair(BoundaryWeight(1.0, bl), BoundaryWeight(1.0, br));
    return InvariantBoundaries{std::move(forward), std::move(backward),
                               std::move(nl),      std::move(nr),
                               lambda,             std::log(lambda),
                               condition};
}

double verify_invariance(const GaussianWeight& w, const Matrix& b, Side side)
{
    if (b.rows() != w.dim() || b.cols() != w.dim())
        throw ValidationError("verify_invariance: dimension mismatch");
    const Matrix shifted = side == Side::Right ? Matrix(w.rr() + b)
                                               : Matrix(b + w.ll());
    Eigen::PartialPivLU<Matrix> lu(shifted);
    const Matrix inv = lu.inverse();
    if (!inv.allFinite() ||
        (shifted * inv - Matrix::Identity(b.rows(), b.cols())).norm() > 1e-6)
        throw ValidationError("verify_invariance: shifted block is singular");
    const Matrix image = side == Side::Right
                             ? Matrix(w.ll() - w.lr() * inv * w.rl())
                             : Matrix(w.rr() - w.rl() * inv * w.lr());
    return (b - image).norm();
}

double free_energy(const GaussianWeight& w, const SymbolSpectrum& s,
                   FreeEnergyMethod method, int p)
{
    const double d = static_cast<double>(w.dim());
    switch (method) {
    case FreeEnergyMethod::Eigenvalue:
        return invariant_boundaries(w, s).free_energy;
    case FreeEnergyMethod::Integral: {
        const LaurentSymbol sym = LaurentSymbol::from_weight(w);
        const Matrix mean = numkit::circle_quadrature([&](double theta) {
            Matrix cell(1, 1);
            cell(0, 0) = positive_log_det(sym.eval(std::polar(1.0, theta)));
            return cell;
        });
        return std::log(w.alpha() * std::pow(kTwoPi, d)) - mean(0, 0).real();
    }
    case FreeEnergyMethod::Dft: {
        if (p < 2)
            throw ValidationError("free_energy: ring size must be >= 2");
        const LaurentSymbol sym = LaurentSymbol::from_weight(w);
        double acc = 0.0;
        for (int k = 0; k < p; ++k)
            acc += positive_log_det(sym.eval(std::polar(1.0, kTwoPi * k / p)));
        return std::log(w.alpha() * std::pow(kTwoPi, d)) - acc / p;
    }
    }
    throw ValidationError("free_energy: unknown method");
}

std::vector<Vector> dirichlet_solve(const InvariantBoundaries& ib,
                                    const Vector& x0, int steps, Side side)
{
    if (steps < 1)
        throw ValidationError("dirichlet_solve: need at least one step");
    const Matrix& step = side == Side::Right ? ib.forward : ib.backward;
    if (x0.size() != step.rows())
        throw ValidationError("dirichlet_solve: dimension mismatch");
    std::vector<Vector> seq;
    seq.reserve(steps + 1);
    seq.push_back(x0);
    for (int k = 0; k < steps; ++k)
        seq.push_back(step * seq.back());
    return seq;
}

} // namespace eigenbc
