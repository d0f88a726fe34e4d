#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace eu {

template <class Real>
using ComplexT = std::complex<Real>;

using Complex = ComplexT<double>;

template <class Real>
inline constexpr Real pi_v = std::numbers::pi_v<Real>;

template <class Real>
ComplexT<Real> imag_unit() {
    return ComplexT<Real>(Real(0), Real(1));
}

// log(1 + z) without cancellation for small |z|.
template <class Real>
ComplexT<Real> log1p(const ComplexT<Real>& z) {
    const Real x = z.real();
    const Real y = z.imag();
    const Real re = Real(0.5) * std::log1p(x * (Real(2) + x) + y * y);
    const Real im = std::atan2(y, Real(1) + x);
    return {re, im};
}

// Reduce a real phase to (-pi, pi].
template <class Real>
Real reduce_phase(Real x) {
    const Real two_pi = 2 * pi_v<Real>;
    Real r = std::fmod(x, two_pi);
    if (r > pi_v<Real>) r -= two_pi;
    if (r <= -pi_v<Real>) r += two_pi;
    return r;
}

}  // namespace eu
