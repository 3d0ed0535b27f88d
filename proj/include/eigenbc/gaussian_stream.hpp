#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "eigenbc/types.hpp"

namespace eigenbc::detail {

/// Seeded stream of standard normals via Box-Muller over mt19937_64 bits.
/// Hand-rolled so draws are identical across standard libraries.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

    double real()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Circularly-symmetric complex normal with E|z|^2 = 1.
    Complex standard_complex()
    {
        return Complex(real(), real()) / std::sqrt(2.0);
    }

private:
    double uniform01()
    {
        // strictly inside (0, 1] so the log is finite
        return (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace eigenbc::detail
