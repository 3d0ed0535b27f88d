#include "eigenbc/weights.hpp"

#include <cmath>

#include "eigenbc/numkit.hpp"

namespace eigenbc {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kInterfaceCondLimit = 1e12;

void require_same_dim(Index a, Index b, const char* who)
{
    if (a != b)
        throw ValidationError(std::string(who) + ": dimension mismatch");
}

} // namespace

GaussianWeight::GaussianWeight(double alpha, Matrix coupling)
    : alpha_(alpha), a_(std::move(coupling))
{
    if (!(alpha_ > 0.0))
        throw ValidationError("GaussianWeight: scale must be positive");
    if (a_.rows() != a_.cols() || a_.rows() == 0 || a_.rows() % 2 != 0)
        throw ValidationError("GaussianWeight: coupling must be square of even dimension");
    if (!numkit::is_hermitian_pd(a_))
        throw ValidationError("GaussianWeight: coupling is not Hermitian positive definite");
    d_ = a_.rows() / 2;
    defect_ = d_ - numkit::numerical_rank(lr());
}

BoundaryWeight::BoundaryWeight(double beta, Matrix matrix)
    : beta_(beta), b_(std::move(matrix))
{
    if (!(beta_ > 0.0))
        throw ValidationError("BoundaryWeight: scale must be positive");
    if (b_.rows() != b_.cols() || b_.rows() == 0)
        throw ValidationError("BoundaryWeight: matrix must be square");
    if (!numkit::is_hermitian_pd(b_))
        throw ValidationError("BoundaryWeight: matrix is not Hermitian positive definite");
}

GaussianWeight glue(const GaussianWeight& w1, const GaussianWeight& w2)
{
    require_same_dim(w1.dim(), w2.dim(), "glue");
    const Index d = w1.dim();

    const Matrix interface = w1.rr() + w2.ll();
    Eigen::SelfAdjointEigenSolver<Matrix> es(numkit::hermitian_part(interface));
    const double lmin = es.eigenvalues().minCoeff();
    const double lmax = es.eigenvalues().maxCoeff();
    if (!(lmin > 0.0) || lmax / lmin > kInterfaceCondLimit)
        throw NumericalFailure("glue: interface block is ill-conditioned");

    const Matrix k = numkit::hpd_inverse(interface);
    const double det_k = 1.0 / es.eigenvalues().prod();

    Matrix s(2 * d, 2 * d);
    s.topLeftCorner(d, d) = w1.ll() - w1.lr() * k * w1.rl();
    s.topRightCorner(d, d) = -w1.lr() * k * w2.lr();
    s.bottomLeftCorner(d, d) = -w2.rl() * k * w1.rl();
    s.bottomRightCorner(d, d) = w2.rr() - w2.rl() * k * w2.lr();

    const double scale =
        std::pow(kTwoPi, static_cast<double>(d)) * w1.alpha() * w2.alpha() * det_k;
    return GaussianWeight(scale, std::move(s));
}

BoundaryWeight act_left(const BoundaryWeight& b, const GaussianWeight& w)
{
    require_same_dim(b.dim(), w.dim(), "act_left");
    const Matrix shifted = b.matrix() + w.ll();
    const Matrix inv = numkit::hpd_inverse(shifted);
    const Matrix s = w.rr() - w.rl() * inv * w.lr();
    const double scale = std::pow(kTwoPi, static_cast<double>(w.dim())) *
                         w.alpha() * b.beta() / numkit::hpd_det(shifted);
    return BoundaryWeight(scale, s);
}

BoundaryWeight act_right(const GaussianWeight& w, const BoundaryWeight& b)
{
    require_same_dim(b.dim(), w.dim(), "act_right");
    const Matrix shifted = w.rr() + b.matrix();
    const Matrix inv = numkit::hpd_inverse(shifted);
    const Matrix s = w.ll() - w.lr() * inv * w.rl();
    const double scale = std::pow(kTwoPi, static_cast<double>(w.dim())) *
                         w.alpha() * b.beta() / numkit::hpd_det(shifted);
    return BoundaryWeight(scale, s);
}

double pair(const BoundaryWeight& bl, const BoundaryWeight& br)
{
    require_same_dim(bl.dim(), br.dim(), "pair");
    return std::pow(kTwoPi, static_cast<double>(bl.dim())) * bl.beta() *
           br.beta() / numkit::hpd_det(bl.matrix() + br.matrix());
}

GaussianWeight schur_power(const GaussianWeight& w, int n)
{
    if (n < 1)
        throw ValidationError("schur_power: exponent must be >= 1");
    GaussianWeight acc = w;
    for (int i = 1; i < n; ++i)
        acc = glue(acc, w);
    return acc;
}

std::pair<BoundaryWeight, BoundaryWeight>
normalize_pair(const BoundaryWeight& bl, const BoundaryWeight& br)
{
    require_same_dim(bl.dim(), br.dim(), "normalize_pair");
    const double beta =
        std::sqrt(numkit::hpd_det(bl.matrix() + br.matrix()) /
                  std::pow(kTwoPi, static_cast<double>(bl.dim())));
    return {BoundaryWeight(beta, bl.matrix()), BoundaryWeight(beta, br.matrix())};
}

Matrix chain_precision(const GaussianWeight& w, const Matrix& bl,
                       const Matrix& br, int p)
{
    if (p < 1)
        throw ValidationError("chain_precision: chain length must be >= 1");
    const Index d = w.dim();
    if (bl.rows() != d || bl.cols() != d || br.rows() != d || br.cols() != d)
        throw ValidationError("chain_precision: boundary dimension mismatch");

    const Index n = d * (p + 1);
    Matrix q = Matrix::Zero(n, n);
    for (int k = 0; k <= p; ++k) {
        Matrix diag = Matrix::Zero(d, d);
        if (k > 0)
            diag += w.rr();
        if (k < p)
            diag += w.ll();
        if (k == 0)
            diag += bl;
        if (k == p)
            diag += br;
        q.block(k * d, k * d, d, d) = diag;
        if (k < p) {
            q.block(k * d, (k + 1) * d, d, d) = w.lr();
            q.block((k + 1) * d, k * d, d, d) = w.rl();
        }
    }
    return q;
}

double partition_function(const GaussianWeight& w, const BoundaryWeight& bl,
                          const BoundaryWeight& br, int p, double tol)
{
    if (p < 1)
        throw ValidationError("partition_function: chain length must be >= 1");
    require_same_dim(bl.dim(), w.dim(), "partition_function");
    require_same_dim(br.dim(), w.dim(), "partition_function");

    BoundaryWeight cur = bl;
    for (int k = 0; k < p; ++k)
        cur = act_left(cur, w);
    const double algebraic = pair(cur, br);

    const Matrix q = chain_precision(w, bl.matrix(), br.matrix(), p);
    const double d = static_cast<double>(w.dim());
    const double dense = std::pow(kTwoPi, d * (p + 1)) / numkit::hpd_det(q) *
                         bl.beta() * br.beta() *
                         std::pow(w.alpha(), static_cast<double>(p));

    if (std::abs(algebraic - dense) > tol * std::abs(dense))
        throw NumericalFailure("partition_function: algebraic and dense routes disagree");
    return algebraic;
}

} // namespace eigenbc
