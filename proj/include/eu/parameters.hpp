#pragma once

#include <optional>

namespace eu {

struct ProblemParams {
    double t = 0.0;
    double delta = 0.0;
    double sigma = 0.5;
    double lambda = 0.0;

    // Convenience constructor from the rescaled offset; lambda = lambda_c (1 + Lambda).
    static ProblemParams from_Lambda(double t, double delta, double sigma, double Lambda);
};

struct SplitParams {
    int m = 4;
    double b = 0.0;       // a = t^{-b delta}
    double a = 0.0;
    double k = 0.0;       // split offset t^{delta-1} (1 - a)
    double D = 0.0;       // phase derivative at z = 1 - k
    double D_minus = 0.0; // -ln(1 - a)
};

struct DerivedParams {
    ProblemParams p;
    double eps = 0.0;          // t^{delta-1}
    double lambda_c = 0.0;
    double Lambda = 0.0;
    double log1p_Lambda = 0.0; // ln(1 + Lambda) = ln(lambda / lambda_c)
    double omega = 0.0;
    double phi = 0.0;
    // t F(1 - eps) and t f0 / (1 + lambda_c), reduced to (-pi, pi] in extended precision.
    double endpoint_phase = 0.0;
    double prefactor_phase = 0.0;
    std::optional<SplitParams> split;
};

void validate(const ProblemParams& p);

DerivedParams derive(const ProblemParams& p);

double select_phi(double lambda);

// Default b = 1/2 - 1/(4m); b must lie strictly inside (1/2 - 1/(4m-2), 1/2 - 1/(4m+2)).
DerivedParams choose_split(const DerivedParams& d, int m, std::optional<double> b = std::nullopt);

// Split from an explicit a in (0, 1); b is reported as -ln a / (delta ln t).
DerivedParams choose_split_a(const DerivedParams& d, int m, double a);

double default_b(int m);

// Extended-precision recomputation of lambda_c, Lambda and omega; returns the
// largest deviation from d: relative for lambda_c, on the scale max(1, |x|) for Lambda and omega.
double derived_roundoff(const DerivedParams& d);

}  // namespace eu
