#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "digitseq/errors.hpp"

namespace digitseq {

inline constexpr double two_pi = 6.283185307179586476925286766559;

/// e(x) = exp(2*pi*i*x). The argument is reduced mod 1 before the trig calls
/// so large phases keep full precision.
inline std::complex<double> unit_phase(double x) {
    const double r = std::remainder(x, 1.0);
    return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

/// e(x) with the reduction done in extended precision; used where the raw
/// phase grows past 2^26 or so (theta * n terms).
inline std::complex<double> unit_phase_l(long double x) {
    const auto r = static_cast<double>(std::remainder(x, 1.0L));
    return {std::cos(two_pi * r), std::sin(two_pi * r)};
}

/// Distance from x to the nearest integer.
inline double dist_to_int(double x) {
    return std::fabs(std::remainder(x, 1.0));
}

/// q^e with overflow detection.
inline std::uint64_t upow(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / base)
            throw budget_error("integer power overflows 64 bits");
        r *= base;
    }
    return r;
}

/// q^e or UINT64_MAX if it does not fit.
inline std::uint64_t upow_sat(std::uint64_t base, int exp) {
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (r > UINT64_MAX / base) return UINT64_MAX;
        r *= base;
    }
    return r;
}

} // namespace digitseq
