#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eu/parameters.hpp"
#include "eu/types.hpp"

namespace eu {

enum class Method { LeadingOrder, LeadingOrderLargeOmega, AllOrders, CorollaryLeading };
enum class Regime { OmegaBounded, OmegaLarge };

const char* to_string(Method m);
const char* to_string(Regime r);

inline constexpr double default_omega_threshold = 5.0;

struct Approximation {
    Complex value;
    Method method = Method::LeadingOrder;
    std::vector<std::pair<std::string, double>> error_budget;
    Regime regime = Regime::OmegaBounded;

    double budget_total() const;
};

Regime classify(double omega, double threshold = default_omega_threshold);

// sqrt(lambda_c/(1+lambda_c)) (1+lambda_c)^{-(sigma-1/2)} e^{i t f0/(1+lambda_c)}.
Complex prefactor(const DerivedParams& d);

Approximation leading_order(const ProblemParams& p, double threshold = default_omega_threshold);
Approximation leading_order_large_omega(const ProblemParams& p, double threshold = default_omega_threshold);

// The J_B1 main term. margin scales the (4.33)-type window check
// margin t^{-delta/2} <= a <= t^{-delta/3} / margin.
Complex jb1_main(const ProblemParams& p, double a, double margin = 1.0);

Approximation all_orders(const ProblemParams& p, int m = 4, std::optional<double> a = std::nullopt);
Approximation corollary_leading(const ProblemParams& p);

// corollary_leading minus the endpoint form of the leading order.
Complex corollary_remainder(const ProblemParams& p);

// Extended-precision |t f0/(1+lambda_c) - t F(1 - t^{delta-1})|. The omega^2
// shift appears on both sides of the leading-order bridge and cancels.
double exponent_identity_residual(const ProblemParams& p);

// Signed t f0/(1+lambda_c) - omega^2 - t F(1 - t^{delta-1}); equals -omega^2.
double exponent_identity_with_shift(const ProblemParams& p);

// t(F(1-k) - F(1-eps)) - t^delta a ln(lambda/lambda_c) - a^2 t^delta (1+lambda_c)/2.
double split_phase_residual(const ProblemParams& p, double a);

}  // namespace eu
