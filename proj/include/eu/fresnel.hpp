#pragma once

#include "eu/types.hpp"

namespace eu {

// Integral of e^{i xi^2} from w to infinity along the ray of angle pi/4.
Complex fresnel_tail(double w);

// Same integral for a complex lower limit w with Re w + Im w >= 0; the
// rotated integrand then stays Gaussian-damped.
Complex fresnel_tail_general(Complex w);

// fresnel_tail(w1) - fresnel_tail(w2); w2 may be +infinity.
Complex fresnel_segment(double w1, double w2);

// Leading large-w term e^{i w^2} (-1 / (2 i w)).
Complex fresnel_tail_asymptotic(double w);

}  // namespace eu
