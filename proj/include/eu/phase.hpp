#pragma once

#include <cmath>
#include <vector>

#include "eu/errors.hpp"
#include "eu/types.hpp"

namespace eu {

inline constexpr double cut_guard = 1e-13;

// Throws BranchViolation when z is within cut_guard of (-inf, 0] or [1, inf).
template <class Real>
void check_cuts_f(const ComplexT<Real>& z, const ComplexT<Real>& one_minus_z) {
    if (std::abs(z.imag()) < Real(cut_guard) &&
        (z.real() <= Real(cut_guard) || one_minus_z.real() <= Real(cut_guard)) &&
        !(z.imag() == Real(0) && z.real() > 0 && one_minus_z.real() > 0)) {
        fail(ErrorCode::BranchViolation, "point lies on a branch cut of F");
    }
}

// F(z) = (1-z) ln(1-z) + z ln z + z ln lambda. The complement 1 - z is passed
// separately so callers near z = 1 keep its relative accuracy.
template <class Real>
ComplexT<Real> big_f(const ComplexT<Real>& z, const ComplexT<Real>& one_minus_z, Real lambda) {
    check_cuts_f(z, one_minus_z);
    if (!(lambda > 0)) fail(ErrorCode::InvalidParam, "lambda must be positive");
    ComplexT<Real> r = z * std::log(lambda);
    if (one_minus_z != ComplexT<Real>(0)) r += one_minus_z * std::log(one_minus_z);
    if (z != ComplexT<Real>(0)) r += z * std::log(z);
    return r;
}

template <class Real>
ComplexT<Real> big_f(const ComplexT<Real>& z, Real lambda) {
    return big_f(z, ComplexT<Real>(Real(1)) - z, lambda);
}

// dF/dz = ln z - ln(1 - z) + ln lambda.
template <class Real>
ComplexT<Real> d_f(const ComplexT<Real>& z, const ComplexT<Real>& one_minus_z, Real lambda) {
    if (z == ComplexT<Real>(0) || one_minus_z == ComplexT<Real>(0))
        fail(ErrorCode::SingularPoint, "dF/dz is singular at z = 0 and z = 1");
    check_cuts_f(z, one_minus_z);
    return std::log(z) - std::log(one_minus_z) + std::log(lambda);
}

template <class Real>
ComplexT<Real> d_f(const ComplexT<Real>& z, Real lambda) {
    return d_f(z, ComplexT<Real>(Real(1)) - z, lambda);
}

template <class Real>
ComplexT<Real> d2_f(const ComplexT<Real>& z, const ComplexT<Real>& one_minus_z) {
    if (z == ComplexT<Real>(0) || one_minus_z == ComplexT<Real>(0))
        fail(ErrorCode::SingularPoint, "d2F/dz2 is singular at z = 0 and z = 1");
    return Real(1) / (z * one_minus_z);
}

template <class Real>
ComplexT<Real> d2_f(const ComplexT<Real>& z) {
    return d2_f(z, ComplexT<Real>(Real(1)) - z);
}

template <class Real>
Real stationary_point(Real lambda) {
    return Real(1) / (Real(1) + lambda);
}

// F(1 - eps + delta_z) - F(1 - eps), where log1p_Lambda = ln(lambda / lambda_c).
// Every term stays small when delta_z does, so t times the
// result keeps its relative accuracy for large t.
template <class Real>
ComplexT<Real> big_f_increment(const ComplexT<Real>& delta_z, Real eps, Real log1p_Lambda) {
    const ComplexT<Real> om = ComplexT<Real>(eps) - delta_z;  // 1 - z
    const ComplexT<Real> z = ComplexT<Real>(Real(1) - eps) + delta_z;
    check_cuts_f(z, om);
    ComplexT<Real> r = delta_z * log1p_Lambda + z * log1p(delta_z / (Real(1) - eps));
    if (om != ComplexT<Real>(0)) r += om * log1p(-delta_z / eps);
    return r;
}

template <class Real>
Real f0(Real Lambda, Real lambda_c) {
    return std::log(lambda_c / (Real(1) + lambda_c)) + std::log1p(Lambda) -
           lambda_c * std::log((Real(1) + lambda_c) / lambda_c);
}

template <class Real>
void check_cuts_zeta(const ComplexT<Real>& zeta, Real lambda_c) {
    if (std::abs(zeta.imag()) < Real(cut_guard) &&
        (zeta.real() >= Real(1) - Real(cut_guard) ||
         Real(1) + lambda_c * zeta.real() <= Real(cut_guard))) {
        fail(ErrorCode::BranchViolation, "zeta lies on a branch cut of f1");
    }
}

template <class Real>
ComplexT<Real> f1(const ComplexT<Real>& zeta, Real lambda_c, Real Lambda) {
    check_cuts_zeta(zeta, lambda_c);
    const ComplexT<Real> lz = lambda_c * zeta;
    const ComplexT<Real> lp = log1p(lz);
    const ComplexT<Real> lm = log1p(-zeta);
    return lz * (std::log1p(Lambda) + lp - lm) + lp + lambda_c * lm;
}

// df1/dzeta = lambda_c ln((1 + Lambda)(1 + lambda_c zeta)/(1 - zeta)).
template <class Real>
ComplexT<Real> d_f1(const ComplexT<Real>& zeta, Real lambda_c, Real Lambda) {
    check_cuts_zeta(zeta, lambda_c);
    return lambda_c * (std::log1p(Lambda) + log1p(lambda_c * zeta) - log1p(-zeta));
}

template <class Real>
ComplexT<Real> amp_g(const ComplexT<Real>& zeta, Real lambda_c, Real sigma) {
    check_cuts_zeta(zeta, lambda_c);
    return std::exp(Real(-0.5) * log1p(-zeta) + (sigma - Real(0.5)) * log1p(lambda_c * zeta));
}

template <class Real>
ComplexT<Real> h(const ComplexT<Real>& zeta, Real lambda_c, Real Lambda) {
    return f1(zeta, lambda_c, Lambda) / (Real(1) + lambda_c);
}

struct TaylorCoefficients {
    std::vector<double> c;
};

TaylorCoefficients taylor_c(int n_max, double t, double delta, double lambda);

}  // namespace eu
