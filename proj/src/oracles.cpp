#include "eigenbc/oracles.hpp"

#include <cmath>

#include "eigenbc/gaussian_stream.hpp"

namespace eigenbc::oracles {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

Matrix symbol_value(const GaussianWeight& w, double theta)
{
    const Complex z = std::polar(1.0, theta);
    return Matrix(w.ll() + w.rr()) + w.lr() * z + w.rl() / z;
}

} // namespace

OracleReport riccati_fixed_point(const GaussianWeight& w, Side side,
                                 double tol, int max_iter)
{
    if (!(tol > 0.0))
        throw ValidationError("riccati_fixed_point: tolerance must be positive");
    Matrix b = side == Side::Right ? Matrix(w.ll()) : Matrix(w.rr());
    OracleReport report;
    report.name = side == Side::Right ? "riccati_right" : "riccati_left";
    for (int it = 1; it <= max_iter; ++it) {
        const Matrix shifted =
            side == Side::Right ? Matrix(w.rr() + b) : Matrix(b + w.ll());
        const Matrix inv = numkit::hpd_inverse(shifted);
        const Matrix next = side == Side::Right
                                ? Matrix(w.ll() - w.lr() * inv * w.rl())
                                : Matrix(w.rr() - w.rl() * inv * w.lr());
        const double delta = (next - b).norm();
        b = next;
        if (delta <= tol) {
            report.value = std::move(b);
            report.iterations = it;
            report.residual = delta;
            return report;
        }
        report.residual = delta;
    }
    report.value = std::move(b);
    report.iterations = max_iter;
    report.converged = false;
    return report;
}

Matrix quadrature_fourier(const GaussianWeight& w, long k, int n)
{
    if (n < 4 * std::abs(k) + 16)
        throw ValidationError("quadrature_fourier: grid too coarse for this index");
    return numkit::circle_quadrature(
        [&](double theta) -> Matrix {
            return numkit::hpd_inverse(symbol_value(w, theta)) *
                   std::polar(1.0, -double(k) * theta);
        },
        n);
}

std::vector<Matrix> quadrature_fourier_table(const GaussianWeight& w,
                                             long kmax, int n)
{
    if (kmax < 0)
        throw ValidationError("quadrature_fourier_table: kmax must be >= 0");
    if (n < 4 * kmax + 16)
        throw ValidationError("quadrature_fourier_table: grid too coarse for this range");
    const Index d = w.dim();
    std::vector<Matrix> table(2 * kmax + 1, Matrix::Zero(d, d));
    for (int j = 0; j < n; ++j) {
        const double theta = kTwoPi * j / n;
        const Matrix inv = numkit::hpd_inverse(symbol_value(w, theta));
        if (!inv.allFinite())
            throw NumericalFailure("quadrature_fourier_table: non-finite inverse");
        for (long k = -kmax; k <= kmax; ++k)
            table[k + kmax] += inv * (std::polar(1.0, -double(k) * theta) / double(n));
    }
    return table;
}

Complex dense_det(const Matrix& m)
{
    if (m.rows() != m.cols())
        throw ValidationError("dense_det: matrix is not square");
    if (m.rows() == 0)
        return Complex(1.0, 0.0);
    return Eigen::PartialPivLU<Matrix>(m).determinant();
}

double dft_partition(const GaussianWeight& w, int p)
{
    if (p < 2)
        throw ValidationError("dft_partition: ring size must be >= 2");
    double log_z =
        p * std::log(w.alpha() * std::pow(kTwoPi, double(w.dim())));
    for (int k = 0; k < p; ++k) {
        const Complex det = dense_det(symbol_value(w, kTwoPi * k / p));
        if (!(det.real() > 0.0) || std::abs(det.imag()) > 1e-8 * std::abs(det))
            throw NumericalFailure("dft_partition: mode determinant is not positive");
        log_z -= std::log(det.real());
    }
    return std::exp(log_z);
}

GaussianWeight random_weight(Index d, std::uint64_t seed)
{
    if (d < 1)
        throw ValidationError("random_weight: dimension must be >= 1");
    detail::GaussianStream stream(seed);
    Matrix g(2 * d, 2 * d);
    for (Index i = 0; i < 2 * d; ++i)
        for (Index j = 0; j < 2 * d; ++j)
            g(i, j) = stream.standard_complex();
    Matrix a = g * g.adjoint();
    a = numkit::hermitian_part(a);
    a += 0.1 * a.norm() * Matrix::Identity(2 * d, 2 * d);
    return GaussianWeight(1.0, std::move(a));
}

} // namespace eigenbc::oracles
