#include "eu/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

namespace eu {

namespace {

constexpr std::array<double, 11> xgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};

constexpr std::array<double, 11> wgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525883576, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};

// Gauss weights for the odd-indexed Kronrod nodes xgk[1], xgk[3], ..., xgk[9].
constexpr std::array<double, 5> wg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
    double a, b;
    Complex value;
    double err;
    bool at_floor;
};

Panel gk21(const std::function<Complex(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double hw = 0.5 * (b - a);
    const Complex fc = f(c);
    Complex k = fc * wgk[10];
    Complex g(0.0, 0.0);
    double resabs = std::abs(fc) * wgk[10];
    for (int j = 0; j < 10; ++j) {
        const double dx = hw * xgk[j];
        const Complex f1 = f(c - dx);
        const Complex f2 = f(c + dx);
        k += (f1 + f2) * wgk[j];
        resabs += (std::abs(f1) + std::abs(f2)) * wgk[j];
        if (j % 2 == 1) g += (f1 + f2) * wg[j / 2];
    }
    Panel p{a, b, k * hw, std::abs((k - g) * hw), false};
    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * std::abs(hw);
    if (!std::isfinite(std::abs(p.value)))
        fail(ErrorCode::NonConvergence, "integrand not finite on panel");
    if (p.err <= floor) {
        p.err = floor;
        p.at_floor = true;
    }
    return p;
}

struct Totals {
    Complex value{0.0, 0.0};
    double err = 0.0;
};

Totals sum_ordered(std::vector<Panel> panels) {
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    Totals t;
    for (const auto& p : panels) {
        t.value += p.value;
        t.err += p.err;
    }
    return t;
}

}  // namespace

QuadratureResult integrate_interval(const std::function<Complex(double)>& f,
                                    const std::vector<double>& breaks, const QuadratureOptions& opts) {
    QuadratureResult res;
    if (breaks.size() < 2) return res;
    auto worse = [](const Panel& x, const Panel& y) { return x.err < y.err; };
    std::priority_queue<Panel, std::vector<Panel>, decltype(worse)> heap(worse);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] > breaks[i]) heap.push(gk21(f, breaks[i], breaks[i + 1]));
    }
    auto snapshot = [&heap]() {
        auto copy = heap;
        std::vector<Panel> v;
        v.reserve(copy.size());
        while (!copy.empty()) {
            v.push_back(copy.top());
            copy.pop();
        }
        return v;
    };
    if (heap.empty()) return res;

    Complex value(0.0, 0.0);
    double err = 0.0;
    {
        const Totals t = sum_ordered(snapshot());
        value = t.value;
        err = t.err;
    }
    int iter = 0;
    while (true) {
        const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
        if (err <= target) break;
        const Panel worst = heap.top();
        // Bisection cannot reduce an error that is already rounding-limited.
        if (worst.at_floor) break;
        if (static_cast<int>(heap.size()) >= opts.max_panels) {
            const Totals t = sum_ordered(snapshot());
            throw NonConvergenceError("panel cap reached",
                                      QuadratureResult{t.value, t.err, static_cast<int>(heap.size()), 0.0});
        }
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;
        }
        const Panel left = gk21(f, worst.a, mid);
        const Panel right = gk21(f, mid, worst.b);
        heap.push(left);
        heap.push(right);
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        if (++iter % 64 == 0) {
            const Totals t = sum_ordered(snapshot());
            value = t.value;
            err = t.err;
        }
    }
    const Totals t = sum_ordered(snapshot());
    res.value = t.value;
    res.abs_error_estimate = t.err;
    res.panels = static_cast<int>(heap.size());
    return res;
}

RayContour RayContour::from(Complex origin, Complex origin_complement, double angle, double r_max) {
    RayContour c;
    c.origin = origin;
    c.origin_complement = origin_complement;
    c.angle = angle;
    c.r_max = r_max;
    return c;
}

RayPoint ray_point(const RayContour& c, double R) {
    const Complex step = std::polar(R, c.angle);
    return RayPoint{R, step, c.origin + step, c.origin_complement - step};
}

QuadratureResult integrate_ray(const std::function<Complex(const RayPoint&)>& f,
                               const RayContour& contour, const QuadratureOptions& opts,
                               const std::function<double(double)>& phase) {
    if (!(contour.r_max > 0)) fail(ErrorCode::InvalidParam, "r_max must be positive");
    const double r_min = contour.r_min > 0 ? contour.r_min : std::ldexp(contour.r_max, -40);
    std::vector<double> geo{0.0};
    {
        std::vector<double> up;
        for (double r = contour.r_max; r >= r_min; r *= 0.5) up.push_back(r);
        geo.insert(geo.end(), up.rbegin(), up.rend());
    }
    std::vector<double> breaks;
    breaks.reserve(geo.size());
    breaks.push_back(geo.front());
    for (std::size_t i = 0; i + 1 < geo.size(); ++i) {
        const double a = geo[i], b = geo[i + 1];
        if (phase) {
            constexpr int samples = 16;
            double variation = 0.0;
            double prev = phase(a);
            for (int s = 1; s <= samples; ++s) {
                const double cur = phase(a + (b - a) * s / samples);
                variation += std::abs(cur - prev);
                prev = cur;
            }
            const int pieces = std::min(100000, static_cast<int>(std::ceil(variation / (2 * pi_v<double>))));
            for (int s = 1; s < pieces; ++s) breaks.push_back(a + (b - a) * s / pieces);
        }
        breaks.push_back(b);
    }
    const Complex jac = std::polar(1.0, contour.angle);
    QuadratureOptions o = opts;
    o.max_panels = std::max<int>(opts.max_panels, static_cast<int>(breaks.size()) * 4);
    return integrate_interval([&](double R) { return f(ray_point(contour, R)) * jac; }, breaks, o);
}

double choose_truncation(const std::function<double(double)>& log_decay, double amplitude_bound,
                         double tol, double r_start, double r_limit) {
    const double need = std::log(1.0 / tol);
    for (double r = r_start; r <= r_limit; r *= 2) {
        if (log_decay(r) >= need + std::log1p(r * amplitude_bound)) return r;
    }
    fail(ErrorCode::NonConvergence, "integrand does not decay along the ray");
}

}  // namespace eu
