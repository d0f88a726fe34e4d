#pragma once

#include "eu/parameters.hpp"
#include "eu/quadrature.hpp"
#include "eu/types.hpp"

namespace eu {

// State of the map (lambda_c (1+lambda_c)/2) u^2 + lambda_c ln(1+Lambda) u = f1(zeta).
struct CovState {
    double t = 0.0;
    double Lambda = 0.0;
    double lambda_c = 0.0;
    double log1p_Lambda = 0.0;
    double omega = 0.0;
    double sigma = 0.5;
    Complex branch_anchor{0.0, 0.0};

    static CovState from(const DerivedParams& d);
    double quad_coeff() const { return lambda_c * (1 + lambda_c) / 2; }
    double lin_coeff() const { return lambda_c * log1p_Lambda; }
};

Complex u_of_zeta(Complex zeta, const CovState& s);
Complex zeta_of_u(Complex u, const CovState& s);
Complex dzeta_du(Complex u, const CovState& s);
Complex d2zeta_du2(Complex u, const CovState& s);

// F(u) = g(zeta(u)) dzeta/du.
Complex amp_F(Complex u, const CovState& s);

// dF/du in closed form, from zeta'' g + zeta'^2 g'(zeta).
Complex amp_F_prime(Complex u, const CovState& s);

// dF/du by centred differences with h = 1e-5 (1 + |u|) along the ray direction.
Complex amp_F_prime_fd(Complex u, const CovState& s);

Complex phi_closed(Complex u, const CovState& s);

struct DecompositionResult {
    double residual = 0.0;
    Complex jtilde;
    Complex phi0;
    Complex integral;
    double budget = 0.0;  // summed quadrature error estimates
};

// |Jtilde - Phi(0) - int_0^{infty e^{i pi/4}} F'(u) Phi(u) du|.
DecompositionResult decomposition_residual(const ProblemParams& p, double tol);

}  // namespace eu
