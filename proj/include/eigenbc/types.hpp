#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace eigenbc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Bad input: wrong shape, non-positive scale, coupling not Hermitian PD,
/// malformed file.  CLI exit code 1.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural assumption failed: a zero of the symbol with multiplicity
/// above one, or a zero inside the unit-circle exclusion band.
/// CLI exit code 2.
class AssumptionViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Numerical breakdown or a failed cross-check between two independent
/// computation routes.  CLI exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace eigenbc
