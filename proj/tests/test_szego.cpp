#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eigenbc/invariant.hpp"
#include "eigenbc/numkit.hpp"
#include "eigenbc/oracles.hpp"
#include "eigenbc/szego.hpp"
#include "fixtures.hpp"

using namespace eigenbc;
using fixtures::max_abs_diff;
using fixtures::scalar;

namespace {

TrigPolySymbol ou_symbol()
{
    return TrigPolySymbol({scalar(2.5), scalar(-1.0)});
}

// scalar order-2 symbol 6 + 4 cos(theta) + 2 cos(2 theta); minimum 4
TrigPolySymbol order_two_symbol()
{
    return TrigPolySymbol({scalar(6.0), scalar(2.0), scalar(1.0)});
}

// Hermitian-PD order-1 symbol with a non-normal order-one coefficient
TrigPolySymbol random_symbol(std::uint64_t seed)
{
    const Matrix g = oracles::random_weight(1, seed).coupling();
    Matrix p1(2, 2);
    p1 << g(0, 0), g(0, 1) + Complex(0, 0.4), Complex(0.2, -0.7), g(1, 1);
    Eigen::JacobiSVD<Matrix> svd(p1);
    const Matrix p0 =
        2.5 * svd.singularValues()(0) * Matrix::Identity(2, 2);
    return TrigPolySymbol({p0, p1});
}

// pivots of the successive Schur eliminations from the top-left block
std::vector<Matrix> schur_pivots(Matrix m, Index d)
{
    std::vector<Matrix> pivots;
    while (m.rows() > 0) {
        const Matrix pivot = m.topLeftCorner(d, d);
        pivots.push_back(pivot);
        if (m.rows() == d)
            break;
        const Index rest = m.rows() - d;
        m = Matrix(m.bottomRightCorner(rest, rest) -
                   m.bottomLeftCorner(rest, d) * pivot.inverse() *
                       m.topRightCorner(d, rest));
    }
    return pivots;
}

} // namespace

TEST_CASE("symbol validation")
{
    CHECK_THROWS_AS(TrigPolySymbol({scalar(1.0), scalar(1.0)}),
                    ValidationError); // 1 + 2cos dips below zero
    CHECK_THROWS_AS(TrigPolySymbol(std::vector<Matrix>{}), ValidationError);
    CHECK(ou_symbol().order() == 1);
    CHECK(order_two_symbol().eval(M_PI)(0, 0).real() ==
          doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("corrected truncations of the scalar fixture symbol")
{
    const TrigPolySymbol sym = ou_symbol();

    const CorrectedToeplitz one = corrected_toeplitz(sym, 1);
    Matrix t1(2, 2);
    t1 << 2.0, -1.0, -1.0, 2.0;
    CHECK(max_abs_diff(one.matrix.dense(), t1) < 1e-12);
    CHECK(std::abs(one.matrix.corner_left(0, 0) - Complex(-0.5)) < 1e-12);
    CHECK(std::abs(one.matrix.corner_right(0, 0) - Complex(-0.5)) < 1e-12);
    CHECK(one.growth == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(one.kappa == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(oracles::dense_det(one.matrix.dense()).real() ==
          doctest::Approx(3.0).epsilon(1e-12));

    const CorrectedToeplitz two = corrected_toeplitz(sym, 2);
    Matrix t2(3, 3);
    t2 << 2.0, -1.0, 0.0, -1.0, 2.5, -1.0, 0.0, -1.0, 2.0;
    CHECK(max_abs_diff(two.matrix.dense(), t2) < 1e-12);
    CHECK(oracles::dense_det(two.matrix.dense()).real() ==
          doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("determinants are exactly geometric")
{
    int checked = 0;
    for (const TrigPolySymbol& sym :
         {ou_symbol(), random_symbol(71), block_reduce(order_two_symbol())}) {
        for (int p = 1; p <= 24; ++p) {
            const CorrectedToeplitz ct = corrected_toeplitz(sym, p);
            const double dense =
                oracles::dense_det(ct.matrix.dense()).real();
            const double predicted = std::pow(ct.growth, p) * ct.kappa;
            CHECK(std::abs(dense - predicted) <= 1e-10 * std::abs(predicted));
            ++checked;
        }
    }
    CHECK(checked == 72);
}

TEST_CASE("blocking an order-two symbol")
{
    const TrigPolySymbol blocked = block_reduce(order_two_symbol());
    REQUIRE(blocked.order() == 1);
    REQUIRE(blocked.dim() == 2);

    Matrix b0(2, 2), b1(2, 2);
    b0 << 6.0, 2.0, 2.0, 6.0;
    b1 << 1.0, 0.0, 2.0, 1.0;
    CHECK(max_abs_diff(blocked.coeff(0), b0) < 1e-14);
    CHECK(max_abs_diff(blocked.coeff(1), b1) < 1e-14);

    for (int p = 1; p <= 5; ++p) {
        const CorrectedToeplitz ct = corrected_toeplitz(blocked, p);
        const double dense = oracles::dense_det(ct.matrix.dense()).real();
        CHECK(std::abs(dense - std::pow(ct.growth, p) * ct.kappa) <=
              1e-10 * dense);
    }

    CHECK_THROWS_AS(block_reduce(ou_symbol()), ValidationError);
}

TEST_CASE("plain truncations")
{
    const TrigPolySymbol sym = ou_symbol();
    CHECK(plain_toeplitz_det(sym, 1) ==
          doctest::Approx(21.0 / 4.0).epsilon(1e-13));

    // three-term recurrence in closed form: (2^{n+2} - 2^{-n}) / 3
    for (int p = 1; p <= 16; ++p) {
        const double n = p + 1;
        const double expected =
            (std::pow(2.0, n + 2.0) - std::pow(2.0, -n)) / 3.0;
        CHECK(plain_toeplitz_det(sym, p) ==
              doctest::Approx(expected).epsilon(1e-11));
    }

    const TrigPolySymbol id({Matrix::Identity(3, 3)});
    for (int p : {1, 5, 9})
        CHECK(plain_toeplitz_det(id, p) == doctest::Approx(1.0));
}

TEST_CASE("plain and corrected determinants separate into a stable ratio")
{
    const auto rows = asymptotic_report(ou_symbol(), 22);
    REQUIRE(rows.size() == 22);
    CHECK(std::abs(rows[19].ratio - 16.0 / 9.0) < 1e-6);
    CHECK(std::abs(rows[20].plain / rows[19].plain - 2.0) < 1e-6);
    for (size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].corrected / rows[i - 1].corrected ==
              doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(asymptotic_report(ou_symbol(), 3), ValidationError);
}

TEST_CASE("elimination pivots are constant")
{
    for (const TrigPolySymbol& sym : {ou_symbol(), random_symbol(72)}) {
        const Index d = sym.dim();
        const int p = 6;
        const CorrectedToeplitz ct = corrected_toeplitz(sym, p);
        const auto pivots = schur_pivots(ct.matrix.dense(), d);
        REQUIRE(static_cast<int>(pivots.size()) == p + 1);
        const Matrix expected = sym.coeff(0) + ct.matrix.corner_left;
        for (int i = 0; i < p; ++i)
            CHECK(max_abs_diff(pivots[i], expected) < 1e-10);
        const Matrix last = sym.coeff(0) + ct.matrix.corner_left +
                            ct.matrix.corner_right;
        CHECK(max_abs_diff(pivots.back(), last) < 1e-10);
    }
}

TEST_CASE("corners agree with the chain precision corners")
{
    for (const GaussianWeight& w :
         {fixtures::ou_weight(), oracles::random_weight(2, 73)}) {
        const TrigPolySymbol sym(
            {Matrix(w.ll() + w.rr()), Matrix(w.lr())});
        const CorrectedToeplitz ct = corrected_toeplitz(sym, 3);
        const InvariantBoundaries ib =
            invariant_boundaries(w, compute_spectrum(w));
        CHECK(max_abs_diff(Matrix(ct.matrix.corner_left + sym.coeff(0)),
                           Matrix(ib.left.matrix() + w.ll())) < 1e-9);
        CHECK(max_abs_diff(Matrix(ct.matrix.corner_right + sym.coeff(0)),
                           Matrix(ib.right.matrix() + w.rr())) < 1e-9);

        // the corrected matrix for the weight's own symbol is the chain
        // precision matrix under invariant boundaries
        const Matrix q =
            chain_precision(w, ib.left.matrix(), ib.right.matrix(), 3);
        CHECK(max_abs_diff(ct.matrix.dense(), q) < 1e-9);
    }
}

TEST_CASE("rank-deficient order-one coefficient is rejected")
{
    const GaussianWeight rd = fixtures::rd_weight();
    const TrigPolySymbol sym({Matrix(rd.ll() + rd.rr()), Matrix(rd.lr())});
    CHECK_THROWS_AS(corrected_toeplitz(sym, 2), ValidationError);
}
