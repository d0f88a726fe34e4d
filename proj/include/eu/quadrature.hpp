#pragma once

#include <functional>
#include <vector>

#include "eu/errors.hpp"
#include "eu/types.hpp"

namespace eu {

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_panels = 50000;
};

struct QuadratureResult {
    Complex value{0.0, 0.0};
    double abs_error_estimate = 0.0;
    int panels = 0;
    double truncation_bound = 0.0;
};

// Thrown when the panel cap is hit; carries the partial result.
class NonConvergenceError : public Error {
public:
    NonConvergenceError(const std::string& what, QuadratureResult partial)
        : Error(ErrorCode::NonConvergence, what), partial_(partial) {}
    const QuadratureResult& partial() const noexcept { return partial_; }

private:
    QuadratureResult partial_;
};

// Adaptive 21-point Gauss-Kronrod integration of a complex-valued function of
// a real variable over [breaks.front(), breaks.back()], starting from the
// panels delimited by breaks. Panel error is |K21 - G10|, floored at a
// rounding estimate; the worst panel is bisected until the summed error
// meets max(abs_tol, rel_tol |I|).
QuadratureResult integrate_interval(const std::function<Complex(double)>& f,
                                    const std::vector<double>& breaks,
                                    const QuadratureOptions& opts = {});

struct RayPoint {
    double R = 0.0;
    Complex step;         // R e^{i angle}
    Complex z;
    Complex one_minus_z;  // exact complement carried alongside z
};

struct RayContour {
    Complex origin;
    double angle = 0.0;
    double r_max = 1.0;
    Complex origin_complement;  // 1 - origin
    double r_min = 0.0;         // smallest geometric breakpoint; 0 means r_max * 2^-40

    static RayContour from(Complex origin, Complex origin_complement, double angle, double r_max);
};

RayPoint ray_point(const RayContour& c, double R);

// Integral of f(z) dz along origin + R e^{i angle}, 0 <= R <= r_max. The
// optional phase(R) is the real oscillation phase; panels are pre-split so it
// advances by at most 2 pi per panel.
QuadratureResult integrate_ray(const std::function<Complex(const RayPoint&)>& f,
                               const RayContour& contour, const QuadratureOptions& opts = {},
                               const std::function<double(double)>& phase = {});

// Smallest R on a doubling grid starting at r_start with
// log_decay(R) >= ln(1/tol) + ln(1 + R amplitude_bound).
double choose_truncation(const std::function<double(double)>& log_decay, double amplitude_bound,
                         double tol, double r_start, double r_limit = 1e12);

}  // namespace eu
