#include "eu/fresnel.hpp"

#include <cmath>
#include <limits>

#include "eu/errors.hpp"
#include "eu/quadrature.hpp"

namespace eu {

namespace {

// ln of the damping level at which the rotated integrand is cut off.
constexpr double cutoff = 46.0;

Complex rotated(Complex w) {
    const Complex rot = std::polar(1.0, pi_v<double> / 4);
    const Complex beta = Complex(0.0, 2.0) * rot * w;
    const double damp = -beta.real();  // sqrt(2) (Re w + Im w)
    const double s_max = (-damp + std::sqrt(damp * damp + 4 * cutoff)) / 2;
    std::vector<double> breaks{0.0};
    for (int j = 12; j >= 0; --j) breaks.push_back(std::ldexp(s_max, -j));
    QuadratureOptions opts;
    opts.rel_tol = 1e-14;
    const auto r = integrate_interval([&](double s) { return std::exp(beta * s - s * s); }, breaks, opts);
    return rot * std::exp(Complex(0.0, 1.0) * w * w) * r.value;
}

}  // namespace

Complex fresnel_tail(double w) {
    if (std::isnan(w) || w < 0) fail(ErrorCode::NegativeArgument, "fresnel_tail requires w >= 0");
    if (std::isinf(w)) return {0.0, 0.0};
    return rotated(Complex(w, 0.0));
}

Complex fresnel_tail_general(Complex w) {
    if (w.real() + w.imag() < 0)
        fail(ErrorCode::NegativeArgument, "fresnel_tail_general requires Re w + Im w >= 0");
    return rotated(w);
}

Complex fresnel_segment(double w1, double w2) {
    if (std::isnan(w1) || w1 < 0) fail(ErrorCode::NegativeArgument, "segment start must be >= 0");
    if (std::isnan(w2) || w2 < w1) fail(ErrorCode::OrderViolation, "segment requires w1 <= w2");
    if (w1 == w2) return {0.0, 0.0};
    return fresnel_tail(w1) - fresnel_tail(w2);
}

Complex fresnel_tail_asymptotic(double w) {
    if (w == 0) fail(ErrorCode::ZeroArgument, "asymptotic form undefined at w = 0");
    if (std::isnan(w) || w < 0) fail(ErrorCode::NegativeArgument, "asymptotic form requires w > 0");
    return std::exp(Complex(0.0, w * w)) * Complex(0.0, 0.5 / w);
}

}  // namespace eu
