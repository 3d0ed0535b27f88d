#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eigenbc/numkit.hpp"
#include "eigenbc/oracles.hpp"
#include "eigenbc/process.hpp"
#include "fixtures.hpp"

using namespace eigenbc;
using fixtures::max_abs_diff;
using fixtures::scalar;

namespace {

InvariantBoundaries eigen_boundaries(const GaussianWeight& w)
{
    return invariant_boundaries(w, compute_spectrum(w));
}

} // namespace

TEST_CASE("chain law of the scalar fixture")
{
    const GaussianWeight ou = fixtures::ou_weight();
    const InvariantBoundaries ib = eigen_boundaries(ou);

    const ChainLaw one = assemble_chain(ou, ib.left, ib.right, 1);
    Matrix q(2, 2), sigma(2, 2);
    q << 2.0, -1.0, -1.0, 2.0;
    sigma << 2.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, 2.0 / 3.0;
    CHECK(max_abs_diff(one.precision, q) < 1e-12);
    CHECK(max_abs_diff(one.covariance, sigma) < 1e-12);
    CHECK(one.toeplitz);

    const ChainLaw two = assemble_chain(ou, ib.left, ib.right, 2);
    CHECK(std::abs(two.covariance(0, 0) - Complex(2.0 / 3.0)) < 1e-12);
    CHECK(std::abs(two.covariance(0, 1) - Complex(1.0 / 3.0)) < 1e-12);
    CHECK(std::abs(two.covariance(0, 2) - Complex(1.0 / 6.0)) < 1e-12);
    CHECK(two.toeplitz);

    const ChainLaw skew =
        assemble_chain(ou, BoundaryWeight(1.0, scalar(2.0)), ib.right, 3);
    CHECK_FALSE(skew.toeplitz);
}

TEST_CASE("covariance blocks invert the precision")
{
    for (const GaussianWeight& w :
         {fixtures::ou_weight(), fixtures::rd_weight(),
          oracles::random_weight(3, 61)}) {
        const SymbolSpectrum s = compute_spectrum(w);
        const InvariantBoundaries ib = invariant_boundaries(w, s);
        for (int p : {1, 4, 16}) {
            const Matrix sigma = covariance_toeplitz(s, p).dense();
            CHECK(max_abs_diff(sigma, sigma.adjoint()) < 1e-12);
            const Matrix q =
                chain_precision(w, ib.left.matrix(), ib.right.matrix(), p);
            const Index n = q.rows();
            CHECK((sigma * q - Matrix::Identity(n, n)).norm() < 1e-8);
        }
    }
}

TEST_CASE("sampling is deterministic and matches the covariance")
{
    const GaussianWeight ou = fixtures::ou_weight();
    const InvariantBoundaries ib = eigen_boundaries(ou);
    const ChainLaw law = assemble_chain(ou, ib.left, ib.right, 4);

    const auto a = sample(law, 64, 99);
    const auto b = sample(law, 64, 99);
    REQUIRE(a.size() == 64);
    for (size_t i = 0; i < a.size(); ++i)
        CHECK((a[i] - b[i]).norm() == 0.0);
    CHECK((a[0] - sample(law, 64, 100)[0]).norm() > 1e-8);

    const int n = 20000;
    const auto draws = sample(law, n, 4242);
    for (int site = 0; site <= 4; ++site) {
        double mean = 0.0, second = 0.0;
        for (const auto& x : draws) {
            const double v = std::norm(x(site));
            mean += v;
            second += v * v;
        }
        mean /= n;
        second /= n;
        const double se = std::sqrt((second - mean * mean) / n);
        CHECK(std::abs(mean - 2.0 / 3.0) <= 3.0 * se);
    }
    for (int site = 0; site + 1 <= 4; ++site) {
        Complex acc(0, 0);
        double second = 0.0;
        for (const auto& x : draws) {
            const Complex v = x(site) * std::conj(x(site + 1));
            acc += v;
            second += std::norm(v);
        }
        acc /= double(n);
        const double se = std::sqrt((second / n - std::norm(acc)) / n);
        CHECK(std::abs(acc - Complex(1.0 / 3.0)) <= 3.0 * se);
    }
}

TEST_CASE("conditional law")
{
    const GaussianWeight ou = fixtures::ou_weight();
    const SymbolSpectrum s = compute_spectrum(ou);
    const InvariantBoundaries ib = invariant_boundaries(ou, s);

    const ConditionalLaw lag1 = conditional_law(ib, s, 1, 1);
    CHECK(std::abs(lag1.mean_k1(0, 0) - Complex(0.5)) < 1e-12);
    CHECK(std::abs(lag1.covariance(0, 0) - Complex(0.5)) < 1e-12);

    const ConditionalLaw lag0 = conditional_law(ib, s, 0, 0);
    CHECK(lag0.covariance.norm() < 1e-14);

    CHECK(std::abs(conditional_mean_coefficient(ib, 1, Side::Left)(0, 0) -
                   Complex(0.5)) < 1e-12);
    CHECK_THROWS_AS(conditional_law(ib, s, 2, 1), ValidationError);
}

TEST_CASE("markov identity for coefficients")
{
    for (const GaussianWeight& w :
         {fixtures::ou_weight(), fixtures::rd_weight(),
          oracles::random_weight(2, 62)}) {
        const SymbolSpectrum s = compute_spectrum(w);
        const Matrix c0_inv = fourier_coefficient(s, 0).value.inverse();
        for (int k = -10; k <= 10; ++k)
            for (int l = -10; l <= 10; ++l) {
                if (k * l < 0 || std::abs(k) + std::abs(l) > 10)
                    continue;
                const Matrix lhs = fourier_coefficient(s, k + l).value;
                const Matrix rhs = fourier_coefficient(s, k).value * c0_inv *
                                   fourier_coefficient(s, l).value;
                CHECK((lhs - rhs).norm() < 1e-8);
            }
    }
}

TEST_CASE("three-point conditional independence on the finite chain")
{
    const GaussianWeight w = oracles::random_weight(2, 63);
    const SymbolSpectrum s = compute_spectrum(w);
    const Matrix sigma = covariance_toeplitz(s, 6).dense();
    const Index d = w.dim();
    const Matrix c0_inv =
        Matrix(sigma.block(2 * d, 2 * d, d, d)).inverse();
    for (int k : {0, 1})
        for (int m : {2, 3})
            for (int l : {4, 5, 6}) {
                const Matrix skl = sigma.block(k * d, l * d, d, d);
                const Matrix skm = sigma.block(k * d, m * d, d, d);
                const Matrix sml = sigma.block(m * d, l * d, d, d);
                CHECK((skl - skm * c0_inv * sml).norm() < 1e-8);
            }
}

TEST_CASE("marginalizing the last site is the boundary action")
{
    const GaussianWeight w = oracles::random_weight(2, 64);
    const BoundaryWeight bl(1.0, Matrix::Identity(2, 2));
    const BoundaryWeight br(1.0, 2.0 * Matrix::Identity(2, 2));
    const int p = 5;
    const Matrix q = chain_precision(w, bl.matrix(), br.matrix(), p);

    const Index d = w.dim();
    const Index keep = d * p;
    const Matrix a = q.topLeftCorner(keep, keep);
    const Matrix b = q.topRightCorner(keep, d);
    const Matrix c = q.bottomRightCorner(d, d);
    const Matrix reduced = a - b * c.inverse() * b.adjoint();

    const BoundaryWeight moved = act_right(w, br);
    const Matrix expected = chain_precision(w, bl.matrix(), moved.matrix(), p - 1);
    CHECK(max_abs_diff(reduced, expected) < 1e-10);
}

TEST_CASE("ring law of the scalar fixture")
{
    const GaussianWeight ou = fixtures::ou_weight();
    const PeriodicChainLaw ring = periodic_chain(ou, 2);
    REQUIRE(ring.modes.size() == 2);
    CHECK(std::abs(ring.modes[0](0, 0) - Complex(0.5)) < 1e-14);
    CHECK(std::abs(ring.modes[1](0, 0) - Complex(4.5)) < 1e-14);
    CHECK(ring.partition ==
          doctest::Approx(16.0 * M_PI * M_PI / 9.0).epsilon(1e-10));

    for (int p : {2, 3, 8}) {
        const PeriodicChainLaw law = periodic_chain(ou, p);
        const double dense =
            std::pow(2.0 * M_PI, double(p)) /
            oracles::dense_det(law.precision).real();
        CHECK(law.partition == doctest::Approx(dense).epsilon(1e-10));

        Complex mode_product(1.0, 0.0);
        for (const Matrix& m : law.modes)
            mode_product *= oracles::dense_det(m);
        CHECK(oracles::dense_det(law.precision).real() ==
              doctest::Approx(mode_product.real()).epsilon(1e-10));
    }
    CHECK_THROWS_AS(periodic_chain(ou, 1), ValidationError);
}

TEST_CASE("ring marginals approach the infinite-chain covariance")
{
    const GaussianWeight ou = fixtures::ou_weight();
    const SymbolSpectrum s = compute_spectrum(ou);
    const PeriodicChainLaw ring = periodic_chain(ou, 64);
    const Matrix sigma_ring = ring.precision.inverse();

    // central 3x3 window of the ring covariance vs Fourier coefficients
    const int base = 30;
    double worst = 0.0;
    for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
            worst = std::max(
                worst,
                std::abs(sigma_ring(base + k, base + l) -
                         fourier_coefficient(s, l - k).value(0, 0)));
    CHECK(worst < 1e-6);
}
