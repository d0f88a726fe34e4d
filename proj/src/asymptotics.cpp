#include "eu/asymptotics.hpp"

#include <cmath>

#include "eu/errors.hpp"
#include "eu/fresnel.hpp"
#include "eu/ibp.hpp"
#include "eu/phase.hpp"

namespace eu {

namespace {

const Complex I(0.0, 1.0);

void require_half_sigma(const ProblemParams& p) {
    if (p.sigma != 0.5) fail(ErrorCode::SigmaUnsupported, "this expansion requires sigma = 1/2");
}

// e^{i t F(1-eps) - i omega^2} t^{-1/2} sqrt(2/(1+lambda_c)) (1+lambda_c)^{-(sigma-1/2)}.
Complex endpoint_factor(const DerivedParams& d) {
    const double mod = std::sqrt(2 / ((1 + d.lambda_c) * d.p.t)) * std::pow(1 + d.lambda_c, -(d.p.sigma - 0.5));
    return std::polar(mod, d.endpoint_phase - d.omega * d.omega);
}

// e^{i t F(1-k)} with F(1-k) - F(1-eps) evaluated directly.
Complex split_exponential(const DerivedParams& d, double k) {
    const Complex inc = d.p.t * big_f_increment(Complex(d.eps - k), d.eps, d.log1p_Lambda);
    return std::polar(1.0, d.endpoint_phase) * std::exp(I * inc);
}

}  // namespace

const char* to_string(Method m) {
    switch (m) {
        case Method::LeadingOrder: return "leading";
        case Method::LeadingOrderLargeOmega: return "large-omega";
        case Method::AllOrders: return "all-orders";
        case Method::CorollaryLeading: return "corollary";
    }
    return "unknown";
}

const char* to_string(Regime r) { return r == Regime::OmegaLarge ? "omega-large" : "omega-bounded"; }

double Approximation::budget_total() const {
    double s = 0.0;
    for (const auto& [label, v] : error_budget) s += v;
    return s;
}

Regime classify(double omega, double threshold) {
    return omega > threshold ? Regime::OmegaLarge : Regime::OmegaBounded;
}

Complex prefactor(const DerivedParams& d) {
    const double mod = std::sqrt(d.lambda_c / (1 + d.lambda_c)) * std::pow(1 + d.lambda_c, -(d.p.sigma - 0.5));
    return std::polar(mod, d.prefactor_phase);
}

Approximation leading_order(const ProblemParams& p, double threshold) {
    const DerivedParams d = derive(p);
    const Complex tail = fresnel_tail(d.omega);
    const double scale = std::sqrt(2 / (d.lambda_c * p.t));
    const Complex pre = prefactor(d);
    Approximation r;
    r.method = Method::LeadingOrder;
    r.regime = classify(d.omega, threshold);
    r.value = pre * std::polar(scale, -d.omega * d.omega) * tail;
    const Complex alt = endpoint_factor(d) * tail;
    if (std::abs(alt - r.value) > 1e-9 * std::abs(r.value))
        fail(ErrorCode::NonConvergence, "prefactor and endpoint forms of the leading order disagree");
    r.error_budget = {{"o(1) ~ (lambda_c t)^-1/2", std::abs(r.value) / std::sqrt(d.lambda_c * p.t)}};
    return r;
}

Approximation leading_order_large_omega(const ProblemParams& p, double threshold) {
    const DerivedParams d = derive(p);
    if (d.omega < threshold * (1 - 1e-12)) fail(ErrorCode::RegimeMismatch, "omega below the large-omega threshold");
    const double scale = std::sqrt(2 / (d.lambda_c * p.t));
    const Complex pre = prefactor(d);
    Approximation r;
    r.method = Method::LeadingOrderLargeOmega;
    r.regime = classify(d.omega, threshold);
    r.value = pre * scale * (-1.0 / (2.0 * I * d.omega));
    const double base = std::abs(pre) * scale;
    r.error_budget = {{"O(omega^-3)", base / std::pow(d.omega, 3)},
                      {"o(1) ~ (lambda_c t)^-1/2", base / (2 * d.omega) / std::sqrt(d.lambda_c * p.t)}};
    return r;
}

Complex jb1_main(const ProblemParams& p, double a, double margin) {
    require_half_sigma(p);
    const DerivedParams d = derive(p);
    if (!(a >= 0 && a < 1)) fail(ErrorCode::SplitOutOfRange, "a must lie in [0,1)");
    if (a < margin * std::pow(p.t, -p.delta / 2) || a * margin > std::pow(p.t, -p.delta / 3))
        fail(ErrorCode::AssumptionViolated, "a outside the window t^{-delta/2} << a << t^{-delta/3}");
    const double q = std::sqrt(d.lambda_c * p.t / 2);
    return endpoint_factor(d) * fresnel_segment(d.omega, d.omega + a * q);
}

Approximation all_orders(const ProblemParams& p, int m, std::optional<double> a) {
    require_half_sigma(p);
    const DerivedParams d0 = derive(p);
    const DerivedParams d = a ? choose_split_a(d0, m, *a) : choose_split(d0, m);
    const SplitParams& s = *d.split;
    const SeriesResult series = jb2_series(p, s.k, m - 3);
    Approximation r;
    r.method = Method::AllOrders;
    r.regime = classify(d.omega);
    r.value = series.value + jb1_main(p, s.a);
    r.error_budget = {
        {"R_N, N = 2m-2", rn_bound(2 * m - 2, p, s.k)},
        {"J_B1 t^{-1/2+3delta/2} a^4", std::pow(p.t, -0.5 + 1.5 * p.delta) * std::pow(s.a, 4)},
        {"first dropped T_j", tj_bound(m - 3, p, s.a)},
    };
    return r;
}

Approximation corollary_leading(const ProblemParams& p) {
    require_half_sigma(p);
    const DerivedParams d = choose_split(derive(p), 4);
    const SplitParams& s = *d.split;
    Approximation r;
    r.method = Method::CorollaryLeading;
    r.regime = classify(d.omega);
    const Complex t1 = I * split_exponential(d, s.k) * std::pow(p.t, -0.5 - p.delta / 2) / s.D;
    r.value = t1 + jb1_main(p, s.a);
    r.error_budget = {{"O(t^{-1/2-delta/4})", std::pow(p.t, -0.5 - p.delta / 4)}};
    return r;
}

Complex corollary_remainder(const ProblemParams& p) {
    require_half_sigma(p);
    const DerivedParams d = derive(p);
    return corollary_leading(p).value - endpoint_factor(d) * fresnel_tail(d.omega);
}

namespace {

struct ExponentTerms {
    long double tf0, tF, omega2;
};

ExponentTerms exponent_terms(const ProblemParams& p) {
    using ld = long double;
    validate(p);
    const ld t = p.t;
    const ld eps = std::pow(t, ld(p.delta) - 1);
    const ld lc = eps / (1 - eps);
    const ld L = std::log(ld(p.lambda)) - std::log(lc);
    const ld om = std::sqrt(lc * t / 2) * L / (1 + lc);
    const ld tF = t * big_f<ld>(ComplexT<ld>(1 - eps), ComplexT<ld>(eps), ld(p.lambda)).real();
    const ld tf0 = t * f0<ld>(std::expm1(L), lc) / (1 + lc);
    return {tf0, tF, om * om};
}

}  // namespace

double exponent_identity_residual(const ProblemParams& p) {
    const ExponentTerms e = exponent_terms(p);
    return static_cast<double>(std::abs(e.tf0 - e.tF));
}

double exponent_identity_with_shift(const ProblemParams& p) {
    const ExponentTerms e = exponent_terms(p);
    return static_cast<double>(e.tf0 - e.omega2 - e.tF);
}

double split_phase_residual(const ProblemParams& p, double a) {
    const DerivedParams d = derive(p);
    const double td = std::pow(p.t, p.delta);
    const double inc = p.t * big_f_increment(Complex(d.eps * a), d.eps, d.log1p_Lambda).real();
    return inc - td * a * d.log1p_Lambda - 0.5 * a * a * td * (1 + d.lambda_c);
}

}  // namespace eu
