#include "eu/cov.hpp"

#include <cmath>

#include "eu/contour.hpp"
#include "eu/fresnel.hpp"
#include "eu/phase.hpp"

namespace eu {

namespace {

const Complex ray_dir = std::polar(1.0, pi_v<double> / 4);

Complex denom(Complex zeta, const CovState& s) {
    return s.log1p_Lambda + log1p(s.lambda_c * zeta) - log1p(-zeta);
}

}  // namespace

CovState CovState::from(const DerivedParams& d) {
    CovState s;
    s.t = d.p.t;
    s.Lambda = d.Lambda;
    s.lambda_c = d.lambda_c;
    s.log1p_Lambda = d.log1p_Lambda;
    s.omega = d.omega;
    s.sigma = d.p.sigma;
    return s;
}

Complex u_of_zeta(Complex zeta, const CovState& s) {
    if (zeta == Complex(0.0)) return s.branch_anchor;
    const Complex f = f1(zeta, s.lambda_c, s.Lambda);
    const double A = s.quad_coeff();
    const double B = s.lin_coeff();
    const Complex disc = std::sqrt(B * B + 4.0 * A * f);
    // Both roots, each formed without cancellation.
    const Complex plus = B + disc;
    const Complex minus = B - disc;
    const Complex r1 = std::abs(plus) >= std::abs(minus) ? 2.0 * f / plus : (-B + disc) / (2.0 * A);
    const Complex r2 = -B / A - r1;
    const double d1 = std::abs(r1 - zeta);
    const double d2 = std::abs(r2 - zeta);
    if (std::abs(d1 - d2) <= 1e-9 * std::abs(r1 - r2))
        fail(ErrorCode::RootSelectionFailure, "both roots of the quadratic are equidistant from zeta");
    return d1 < d2 ? r1 : r2;
}

Complex zeta_of_u(Complex u, const CovState& s) {
    if (u == Complex(0.0)) return Complex(0.0);
    const double A = s.quad_coeff();
    const double B = s.lin_coeff();
    const Complex rhs = A * u * u + B * u;
    const double tol = 1e-13 * (1 + std::abs(rhs));
    Complex z = u;
    Complex res = f1(z, s.lambda_c, s.Lambda) - rhs;
    bool polished = false;
    for (int it = 0; it < 50; ++it) {
        const Complex deriv = s.lambda_c * denom(z, s);
        if (deriv == Complex(0.0)) fail(ErrorCode::NewtonDivergence, "vanishing derivative in inversion");
        Complex step = res / deriv;
        Complex next = z - step;
        Complex next_res = f1(next, s.lambda_c, s.Lambda) - rhs;
        for (int damp = 0; damp < 30 && std::abs(next_res) > std::abs(res) && std::abs(res) > tol; ++damp) {
            step *= 0.5;
            next = z - step;
            next_res = f1(next, s.lambda_c, s.Lambda) - rhs;
        }
        z = next;
        res = next_res;
        const bool small_step = std::abs(step) <= 4e-16 * std::abs(z);
        if (std::abs(res) < tol && (polished || small_step)) return z;
        if (std::abs(res) < tol) polished = true;
    }
    fail(ErrorCode::NewtonDivergence, "inverse map did not converge in 50 iterations");
}

Complex dzeta_du(Complex u, const CovState& s) {
    if (u == Complex(0.0)) return Complex(1.0);
    const Complex zeta = zeta_of_u(u, s);
    return (s.log1p_Lambda + (1 + s.lambda_c) * u) / denom(zeta, s);
}

Complex d2zeta_du2(Complex u, const CovState& s) {
    const double lc = s.lambda_c;
    if (u == Complex(0.0)) {
        // Lambda > 0: 2A + B zeta''(0) = 2A. Lambda = 0: third-order series of f1.
        return s.log1p_Lambda > 0 ? Complex(0.0) : Complex(-(1 - lc) / 3);
    }
    const Complex zeta = zeta_of_u(u, s);
    const Complex Dn = denom(zeta, s);
    const Complex N = s.log1p_Lambda + (1 + lc) * u;
    const Complex zp = N / Dn;
    const Complex dDn = lc / (1.0 + lc * zeta) + 1.0 / (1.0 - zeta);
    return ((1 + lc) * Dn - N * dDn * zp) / (Dn * Dn);
}

Complex amp_F(Complex u, const CovState& s) {
    const Complex zeta = zeta_of_u(u, s);
    return amp_g(zeta, s.lambda_c, s.sigma) * dzeta_du(u, s);
}

Complex amp_F_prime(Complex u, const CovState& s) {
    const Complex zeta = zeta_of_u(u, s);
    const Complex g = amp_g(zeta, s.lambda_c, s.sigma);
    const Complex zp = dzeta_du(u, s);
    const Complex dlog_g = 0.5 / (1.0 - zeta) + (s.sigma - 0.5) * s.lambda_c / (1.0 + s.lambda_c * zeta);
    return d2zeta_du2(u, s) * g + zp * zp * g * dlog_g;
}

Complex amp_F_prime_fd(Complex u, const CovState& s) {
    const double h = 1e-5 * (1 + std::abs(u));
    const Complex du = h * ray_dir;
    return (amp_F(u + du, s) - amp_F(u - du, s)) / (2.0 * du);
}

Complex phi_closed(Complex u, const CovState& s) {
    const double q = std::sqrt(s.lambda_c * s.t / 2);
    const Complex w = q * u + s.omega;
    return std::exp(Complex(0.0, -s.omega * s.omega)) / q * fresnel_tail_general(w);
}

DecompositionResult decomposition_residual(const ProblemParams& p, double tol) {
    const DerivedParams d = derive(p);
    const CovState s = CovState::from(d);
    DecompositionResult out;
    const auto jt = jtilde_oracle(p, tol);
    out.jtilde = jt.value;
    out.phi0 = phi_closed(Complex(0.0), s);

    // |Phi(s e^{i pi/4} / q)| decays like e^{-x^2 - sqrt(2) omega x}, x = s.
    const double q = std::sqrt(s.lambda_c * s.t / 2);
    const double need = std::log(1 / tol) + 10;
    const double damp = std::sqrt(2.0) * s.omega;
    const double x_max = (-damp + std::sqrt(damp * damp + 4 * need)) / 2;
    const double r_max = x_max / q;
    std::vector<double> breaks{0.0};
    for (int j = 10; j >= 0; --j) breaks.push_back(std::ldexp(r_max, -j));
    QuadratureOptions opts;
    opts.rel_tol = tol;
    opts.abs_tol = 0.1 * tol * std::abs(out.phi0);
    const auto in = integrate_interval(
        [&](double R) {
            const Complex u = R * ray_dir;
            return amp_F_prime_fd(u, s) * phi_closed(u, s) * ray_dir;
        },
        breaks, opts);
    out.integral = in.value;
    out.budget = jt.abs_error_estimate + in.abs_error_estimate;
    out.residual = std::abs(out.jtilde - out.phi0 - out.integral);
    return out;
}

}  // namespace eu
