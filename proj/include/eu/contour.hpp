#pragma once

#include "eu/parameters.hpp"
#include "eu/quadrature.hpp"

namespace eu {

// Direct contour quadrature of the defining integrals; tol is relative.
QuadratureResult jb_oracle(const ProblemParams& p, double tol);
QuadratureResult jb1_oracle(const ProblemParams& p, double k, double tol);
QuadratureResult jb2_oracle(const ProblemParams& p, double k, double tol);
QuadratureResult jtilde_oracle(const ProblemParams& p, double tol);
QuadratureResult phi_oracle(Complex u, const ProblemParams& p, double tol);

// Integral along 1 - k + R e^{i phi} of op(z) e^{i t F(z)} dz, where op is an
// amplitude supplied by the caller (for the integration-by-parts remainders).
QuadratureResult jb2_weighted_oracle(const ProblemParams& p, double k,
                                     const std::function<Complex(Complex z, Complex one_minus_z)>& amplitude,
                                     double tol);

}  // namespace eu
