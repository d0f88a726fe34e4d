#include "eu/contour.hpp"

#include <cmath>
#include <limits>

#include "eu/phase.hpp"

namespace eu {

namespace {

constexpr double pi = pi_v<double>;
const Complex I(0.0, 1.0);

// An integrand amp(z) e^{i psi(z)} along a ray, with psi's imaginary part
// growing so that the tail is exponentially small.
struct DecayingRay {
    Complex origin;
    Complex origin_complement;
    double angle = 0.0;
    std::function<Complex(const RayPoint&)> amplitude;
    std::function<Complex(const RayPoint&)> psi;
    double amplitude_bound = 1.0;  // sup of |amplitude| near the truncation point
    double r_start = 1e-12;
};

std::vector<double> phase_breaks(double a, double b, const std::function<double(double)>& phase) {
    constexpr int samples = 32;
    double variation = 0.0;
    double prev = phase(a);
    for (int s = 1; s <= samples; ++s) {
        const double cur = phase(a + (b - a) * s / samples);
        variation += std::abs(cur - prev);
        prev = cur;
    }
    const int pieces = std::max(1, std::min(100000, static_cast<int>(std::ceil(variation / (2 * pi)))));
    std::vector<double> br;
    for (int s = 0; s <= pieces; ++s) br.push_back(a + (b - a) * s / pieces);
    return br;
}

QuadratureResult integrate_decaying(const DecayingRay& ray, double tol) {
    RayContour c = RayContour::from(ray.origin, ray.origin_complement, ray.angle, 1.0);
    auto at = [&](double R) { return ray_point(c, R); };
    auto im_psi = [&](double R) { return ray.psi(at(R)).imag(); };
    auto re_psi = [&](double R) { return ray.psi(at(R)).real(); };
    auto f = [&](const RayPoint& q) { return ray.amplitude(q) * std::exp(I * ray.psi(q)); };

    double r = choose_truncation(im_psi, ray.amplitude_bound, tol, ray.r_start);
    c.r_max = r;
    QuadratureOptions opts;
    opts.rel_tol = tol;
    QuadratureResult res = integrate_ray(f, c, opts, re_psi);

    const Complex jac = std::polar(1.0, ray.angle);
    auto tail = [&](double R) {
        const double h = 1e-3 * R;
        const double slope = (im_psi(R + h) - im_psi(R)) / h;
        if (!(slope > 0)) return std::numeric_limits<double>::infinity();
        return ray.amplitude_bound * std::exp(-im_psi(R)) / slope;
    };
    double tb = tail(r);
    for (int guard = 0; tb > 0.1 * tol * std::abs(res.value) && guard < 60; ++guard) {
        const double r2 = 2 * r;
        opts.abs_tol = 0.5 * tol * std::abs(res.value);
        const auto extra = integrate_interval([&](double R) { return f(at(R)) * jac; },
                                              phase_breaks(r, r2, re_psi), opts);
        res.value += extra.value;
        res.abs_error_estimate += extra.abs_error_estimate;
        res.panels += extra.panels;
        r = r2;
        tb = tail(r);
    }
    if (!std::isfinite(tb)) fail(ErrorCode::NonConvergence, "ray tail does not decay");
    res.truncation_bound = tb;
    return res;
}

void require_half_sigma(const ProblemParams& p) {
    if (p.sigma != 0.5) fail(ErrorCode::SigmaUnsupported, "split integrals require sigma = 1/2");
}

void require_split(const DerivedParams& d, double k) {
    if (!(k > 0) || !(k <= d.eps)) fail(ErrorCode::SplitOutOfRange, "split offset k must lie in (0, t^{delta-1}]");
}

}  // namespace

QuadratureResult jb_oracle(const ProblemParams& p, double tol) {
    const DerivedParams d = derive(p);
    const double t = p.t;
    const Complex e0 = std::polar(1.0, d.endpoint_phase);
    const double s = p.sigma - 0.5;
    DecayingRay ray;
    ray.origin = Complex(1 - d.eps);
    ray.origin_complement = Complex(d.eps);
    ray.angle = d.phi;
    ray.psi = [&](const RayPoint& q) { return t * big_f_increment(q.step, d.eps, d.log1p_Lambda); };
    ray.amplitude = [&](const RayPoint& q) {
        Complex a = e0 / std::sqrt(q.one_minus_z);
        if (s != 0) a *= std::pow(q.z, s);
        return a;
    };
    ray.amplitude_bound = 1 / std::sqrt(d.eps * std::sin(d.phi));
    ray.r_start = 1e-8 * d.eps;
    return integrate_decaying(ray, tol);
}

QuadratureResult jb1_oracle(const ProblemParams& p, double k, double tol) {
    require_half_sigma(p);
    const DerivedParams d = derive(p);
    require_split(d, k);
    QuadratureResult res;
    if (k == d.eps) return res;
    const double t = p.t;
    const Complex e0 = std::polar(1.0, d.endpoint_phase);
    // x = 1 - z runs over [k, eps]; dz = -dx reverses the limits.
    auto psi = [&](double x) { return t * big_f_increment(Complex(d.eps - x), d.eps, d.log1p_Lambda); };
    auto f = [&](double x) { return e0 * std::exp(I * psi(x)) / std::sqrt(x); };
    QuadratureOptions opts;
    opts.rel_tol = tol;
    res = integrate_interval(f, phase_breaks(k, d.eps, [&](double x) { return psi(x).real(); }), opts);
    return res;
}

QuadratureResult jb2_weighted_oracle(const ProblemParams& p, double k,
                                     const std::function<Complex(Complex, Complex)>& amplitude,
                                     double tol) {
    require_half_sigma(p);
    const DerivedParams d = derive(p);
    require_split(d, k);
    const double t = p.t;
    const Complex e0 = std::polar(1.0, d.endpoint_phase);
    const Complex shift(d.eps - k);
    DecayingRay ray;
    ray.origin = Complex(1 - k);
    ray.origin_complement = Complex(k);
    ray.angle = d.phi;
    ray.psi = [&](const RayPoint& q) { return t * big_f_increment(shift + q.step, d.eps, d.log1p_Lambda); };
    ray.amplitude = [&](const RayPoint& q) { return e0 * amplitude(q.z, q.one_minus_z); };
    const double dist = k * std::sin(d.phi);
    ray.amplitude_bound = std::max(1.0, std::abs(amplitude(Complex(1 - k) + Complex(0, dist), Complex(k) - Complex(0, dist))));
    ray.r_start = 1e-8 * k;
    return integrate_decaying(ray, tol);
}

QuadratureResult jb2_oracle(const ProblemParams& p, double k, double tol) {
    return jb2_weighted_oracle(p, k, [](Complex, Complex om) { return 1.0 / std::sqrt(om); }, tol);
}

QuadratureResult jtilde_oracle(const ProblemParams& p, double tol) {
    const DerivedParams d = derive(p);
    const double t = p.t;
    const double lc = d.lambda_c;
    DecayingRay ray;
    ray.origin = Complex(0.0);
    ray.origin_complement = Complex(1.0);
    ray.angle = d.phi;
    ray.psi = [&](const RayPoint& q) { return t * h(q.z, lc, d.Lambda); };
    ray.amplitude = [&](const RayPoint& q) { return amp_g(q.z, lc, p.sigma); };
    ray.amplitude_bound = 1 / std::sqrt(std::sin(d.phi));
    ray.r_start = 1e-8;
    return integrate_decaying(ray, tol);
}

QuadratureResult phi_oracle(Complex u, const ProblemParams& p, double tol) {
    const DerivedParams d = derive(p);
    const double q = d.lambda_c * p.t / 2;
    const double shift = d.log1p_Lambda / (1 + d.lambda_c);
    if (u != Complex(0.0) && std::abs(std::arg(u) - pi / 4) > 1e-12)
        fail(ErrorCode::InvalidParam, "phi_oracle expects u on the ray of angle pi/4");
    DecayingRay ray;
    ray.origin = u;
    ray.origin_complement = 1.0 - u;
    ray.angle = pi / 4;
    ray.psi = [&](const RayPoint& r) { return q * r.z * (r.z + 2 * shift); };
    ray.amplitude = [](const RayPoint&) { return Complex(1.0); };
    ray.amplitude_bound = 1.0;
    ray.r_start = 1e-6 / std::sqrt(q);
    return integrate_decaying(ray, tol);
}

}  // namespace eu
