#include "eu/parameters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "eu/errors.hpp"
#include "eu/phase.hpp"

namespace eu {

namespace {

using ld = long double;

// Relative slack applied to the closed admissible interval so that values
// produced by from_Lambda at the endpoints are accepted.
constexpr double boundary_slack = 16 * std::numeric_limits<double>::epsilon();

ld eps_of(const ProblemParams& p) { return std::pow(ld(p.t), ld(p.delta) - 1); }

ld lambda_c_of(ld eps) { return eps / (1 - eps); }

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

}  // namespace

ProblemParams ProblemParams::from_Lambda(double t, double delta, double sigma, double Lambda) {
    ProblemParams p{t, delta, sigma, 0.0};
    if (!(t > 1) || !(delta > 0 && delta < 1))
        fail(ErrorCode::InvalidParam, "t must exceed 1 and delta lie in (0,1)");
    if (!(Lambda >= 0) || !std::isfinite(Lambda))
        fail(ErrorCode::OutOfRange, "Lambda must be finite and non-negative");
    const ld lc = lambda_c_of(eps_of(p));
    p.lambda = static_cast<double>(lc * (1 + ld(Lambda)));
    return p;
}

void validate(const ProblemParams& p) {
    if (!std::isfinite(p.t) || !(p.t > 1)) fail(ErrorCode::InvalidParam, "t must exceed 1");
    if (!(p.delta > 0 && p.delta < 1)) fail(ErrorCode::InvalidParam, "delta must lie in (0,1)");
    if (!(p.sigma >= 0.5 && p.sigma < 1)) fail(ErrorCode::InvalidParam, "sigma must lie in [1/2,1)");
    if (!std::isfinite(p.lambda) || !(p.lambda > 0))
        fail(ErrorCode::InvalidParam, "lambda must be positive");
    const ld eps = eps_of(p);
    const ld lo = lambda_c_of(eps);
    const ld hi = 1 / eps - 1;
    if (ld(p.lambda) < lo * (1 - ld(boundary_slack)) || ld(p.lambda) > hi * (1 + ld(boundary_slack)))
        fail(ErrorCode::OutOfRange, "lambda=" + fmt(p.lambda) + " outside [" +
                                        fmt(static_cast<double>(lo)) + ", " +
                                        fmt(static_cast<double>(hi)) + "]");
}

double select_phi(double lambda) {
    const double l = std::log(lambda);
    if (l >= 0) return std::numbers::pi / 4;
    return 0.5 * std::atan(std::numbers::pi / std::abs(l));
}

DerivedParams derive(const ProblemParams& p) {
    validate(p);
    DerivedParams d;
    d.p = p;
    const ld t = p.t;
    const ld eps = eps_of(p);
    const ld lc = lambda_c_of(eps);
    // Lambda is clamped at 0 when lambda sits on the lower endpoint within rounding.
    ld L = std::log(ld(p.lambda)) - std::log(lc);
    if (L < 0) L = 0;
    const ld Lam = std::expm1(L);
    const ld omega = std::sqrt(lc * t / 2) * L / (1 + lc);
    d.eps = static_cast<double>(eps);
    d.lambda_c = static_cast<double>(lc);
    d.Lambda = static_cast<double>(Lam);
    d.log1p_Lambda = static_cast<double>(L);
    d.omega = static_cast<double>(omega);
    d.phi = select_phi(p.lambda);

    const ComplexT<ld> z0(1 - eps);
    const ld tF = t * big_f<ld>(z0, ComplexT<ld>(eps), ld(p.lambda)).real();
    d.endpoint_phase = static_cast<double>(reduce_phase(tF));
    const ld tf0 = t * f0<ld>(Lam, lc) / (1 + lc);
    d.prefactor_phase = static_cast<double>(reduce_phase(tf0));
    return d;
}

double default_b(int m) { return 0.5 - 1.0 / (4.0 * m); }

namespace {

SplitParams make_split(const DerivedParams& d, int m, double b, double a) {
    SplitParams s;
    s.m = m;
    s.b = b;
    s.a = a;
    s.k = d.eps * (1 - a);
    s.D_minus = -std::log1p(-a);
    // D = ln((1-k) lambda / k) = ln(1+Lambda) - ln(1-a) + ln(1-k) - ln(1-eps).
    s.D = d.log1p_Lambda + s.D_minus + std::log1p(-s.k) - std::log1p(-d.eps);
    return s;
}

}  // namespace

DerivedParams choose_split(const DerivedParams& d, int m, std::optional<double> b) {
    if (m < 4) fail(ErrorCode::InvalidSplit, "m must be at least 4");
    const double bb = b.value_or(default_b(m));
    const double lo = 0.5 - 1.0 / (4.0 * m - 2);
    const double hi = 0.5 - 1.0 / (4.0 * m + 2);
    if (!(bb > lo && bb < hi))
        fail(ErrorCode::InvalidSplit, "b=" + fmt(bb) + " outside (" + fmt(lo) + ", " + fmt(hi) + ")");
    const double a = std::pow(d.p.t, -bb * d.p.delta);
    DerivedParams r = d;
    r.split = make_split(d, m, bb, a);
    return r;
}

DerivedParams choose_split_a(const DerivedParams& d, int m, double a) {
    if (m < 4) fail(ErrorCode::InvalidSplit, "m must be at least 4");
    if (!(a > 0 && a < 1)) fail(ErrorCode::InvalidSplit, "a must lie in (0,1)");
    DerivedParams r = d;
    r.split = make_split(d, m, -std::log(a) / (d.p.delta * std::log(d.p.t)), a);
    return r;
}

double derived_roundoff(const DerivedParams& d) {
    using ext = long double;
    const ext one = 1;
    // Recompute along a different route: lambda_c via expm1/log and omega via Lambda.
    const ext le = (ext(d.p.delta) - one) * std::log(ext(d.p.t));
    const ext lc = one / std::expm1(-le);
    const ext Lam = ext(d.p.lambda) / lc - one;
    const ext om = std::sqrt(lc * ext(d.p.t) / 2) * std::log1p(Lam) / (one + lc);
    // Lambda and omega vanish at the critical point, so they are compared on the scale max(1, |x|).
    auto dev = [](ext a, double b) {
        return static_cast<double>(std::abs(a - ext(b)) / std::max(ext(1), std::abs(a)));
    };
    const double lc_rel = static_cast<double>(std::abs((lc - ext(d.lambda_c)) / lc));
    return std::max({lc_rel, dev(Lam, d.Lambda), dev(om, d.omega)});
}

}  // namespace eu
