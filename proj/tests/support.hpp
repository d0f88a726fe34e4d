#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include <doctest.h>

#include "eu/errors.hpp"

namespace support {

inline double rel(std::complex<double> a, std::complex<double> b) { return std::abs(a - b) / std::abs(b); }

// Least-squares slope of ln(err) against ln(h).
inline double log_slope(const std::vector<double>& h, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

template <class Fn>
eu::ErrorCode code_of(Fn fn) {
    try {
        fn();
    } catch (const eu::Error& e) {
        return e.code();
    }
    FAIL("expected an eu::Error");
    return eu::ErrorCode::Degenerate;
}

}  // namespace support
