#include "eigenbc/numkit.hpp"

namespace eigenbc::numkit {

Matrix hermitian_part(const Matrix& m)
{
    return 0.5 * (m + m.adjoint());
}

bool is_hermitian_pd(const Matrix& m, double tol)
{
    if (m.rows() != m.cols())
        throw ValidationError("is_hermitian_pd: matrix is not square");
    if (m.rows() == 0)
        return false;

    const double scale = m.norm();
    if ((m - m.adjoint()).norm() > tol * (1.0 + scale))
        return false;

    Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() > tol * scale;
}

Index numerical_rank(const Matrix& m, double tol)
{
    if (m.size() == 0)
        return 0;
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& sv = svd.singularValues();
    const double smax = sv(0);
    if (smax == 0.0)
        return 0;
    Index rank = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv(i) > tol * smax)
            ++rank;
    return rank;
}

Matrix circle_quadrature(const std::function<Matrix(double)>& f, int n)
{
    if (n < 2)
        throw ValidationError("circle_quadrature: grid size must be >= 2");
    Matrix acc = f(0.0);
    if (!acc.allFinite())
        throw NumericalFailure("circle_quadrature: non-finite integrand");
    const double step = 2.0 * M_PI / n;
    for (int j = 1; j < n; ++j) {
        Matrix v = f(step * j);
        if (!v.allFinite())
            throw NumericalFailure("circle_quadrature: non-finite integrand");
        acc += v;
    }
    return acc / static_cast<double>(n);
}

double hpd_det(const Matrix& m)
{
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("hpd_det: Cholesky factorization failed");
    // det(m) = |det L|^2 and the diagonal of L is real positive
    const Vector diag = Matrix(llt.matrixL()).diagonal();
    double logdet = 0.0;
    for (Index i = 0; i < diag.size(); ++i)
        logdet += std::log(diag(i).real());
    return std::exp(2.0 * logdet);
}

Matrix hpd_inverse(const Matrix& m)
{
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericalFailure("hpd_inverse: Cholesky factorization failed");
    return llt.solve(Matrix::Identity(m.rows(), m.cols()));
}

} // namespace eigenbc::numkit
