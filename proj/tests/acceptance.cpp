#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eu/asymptotics.hpp"
#include "eu/contour.hpp"
#include "eu/cov.hpp"
#include "eu/fresnel.hpp"
#include "eu/harness.hpp"
#include "eu/ibp.hpp"
#include "eu/phase.hpp"

using namespace eu;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::string g(double x) { return fmt("%.4g", x); }

json load(const std::string& name) {
    std::ifstream in(std::string(EU_CONFIG_DIR) + "/" + name);
    if (!in) fail(ErrorCode::InvalidParam, "missing config " + name);
    return json::parse(in);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) { return fit_log_log(x, y).slope; }

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

Rational factorial(int n) {
    Rational r = 1;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

Outcome coefficient_tables() {
    const auto t1 = amn_table(1), t2 = amn_table(2);
    bool ok = t1->at(0, 0) == Rational(1) / 2 && t1->at(1, 1) == -1 && t1->at(1, 0) == 0 && t1->at(0, 1) == 0;
    ok = ok && t2->at(0, 0) == Rational(3) / 4 && t2->at(1, 1) == Rational(-7) / 2 && t2->at(2, 1) == 1 &&
         t2->at(2, 2) == 3 && t2->at(0, 1) == 0 && t2->at(1, 0) == 0 && t2->at(2, 0) == 0 && t2->at(0, 2) == 0 &&
         t2->at(1, 2) == 0;
    int checked = 0;
    for (int N = 1; N <= 8; ++N) {
        const auto t = amn_table(N);
        ok = ok && t->at(N, N) == (N % 2 ? -1 : 1) * Rational(static_cast<long long>(double_factorial(2 * N - 1)));
        const Rational bound = factorial(3 * N);
        for (int m = 0; m <= N; ++m) {
            if (m < N) ok = ok && t->at(m, N) == 0;
            for (int n = 0; n <= N; ++n) {
                ok = ok && abs(t->at(m, n)) < bound;
                ++checked;
            }
        }
    }
    return {ok, "N=1,2 exact; A_NN, A_mN = 0, |A_mn| < (3N)! on " + std::to_string(checked) + " entries, N <= 8"};
}

Outcome lemma_scans() {
    const ScanConfig c = scan_config_from_json(load("lemma_scans.json"));
    const ScanReport im = property_scan(Suite::ImFNonneg, c);
    const ScanReport ph = property_scan(Suite::PhaseLowerBound, c);
    const bool ok = im.pass && ph.pass && im.samples >= 10000 && ph.samples >= 10000;
    return {ok, "min Im F = " + g(im.worst_margin) + " (>= -1e-12), min |F'| - bound = " + g(ph.worst_margin) +
                    " (> 0), " + std::to_string(im.samples) + " points"};
}

Outcome fresnel() {
    const double v = std::sqrt(pi_v<double>) / 2;
    const double e0 = std::abs(fresnel_tail(0.0) - v * std::polar(1.0, pi_v<double> / 4));
    std::vector<double> w{5, 10, 20, 40}, err;
    for (double x : w) err.push_back(std::abs(fresnel_tail(x) - fresnel_tail_asymptotic(x)));
    const double s = slope(w, err);
    return {e0 <= 1e-12 && std::abs(s + 3) <= 0.15,
            "|tail(0) - sqrt(pi)/2 e^{i pi/4}| = " + g(e0) + ", slope = " + fmt("%.4f", s) + " (-3 +- 0.15)"};
}

Outcome split_exactness() {
    const SweepConfig c = sweep_config_from_json(load("split_exactness.json"));
    double worst = 0;
    int n = 0;
    bool ok = true;
    for (const ProblemParams& p : sweep_points(c)) {
        const DerivedParams d = choose_split(derive(p), c.m, c.b);
        const auto full = jb_oracle(p, c.tol);
        const auto j1 = jb1_oracle(p, d.split->k, c.tol);
        const auto j2 = jb2_oracle(p, d.split->k, c.tol);
        const double diff = std::abs(j1.value + j2.value - full.value);
        const double est = full.abs_error_estimate + j1.abs_error_estimate + j2.abs_error_estimate;
        worst = std::max(worst, diff / est);
        ok = ok && diff <= 3 * est;
        ++n;
    }
    return {ok && n == 20, std::to_string(n) + " points, max |J1 + J2 - J| / sum(estimates) = " + g(worst) + " (<= 3)"};
}

Outcome leading_order_accuracy() {
    const SweepConfig c = sweep_config_from_json(load("leading_order.json"));
    const auto rows = run_sweep(c);
    std::map<double, std::vector<double>> by_t;
    std::vector<double> critical;
    bool ok = true;
    for (const auto& r : rows) {
        if (!r.error.empty()) return {false, "row error: " + r.error};
        by_t[r.t].push_back(r.rel_err);
        if (r.omega < 1e-9) critical.push_back(r.rel_err);
    }
    std::string d = "omega = 0 rel err:";
    for (double e : critical) d += " " + g(e);
    for (std::size_t i = 1; i < critical.size(); ++i) ok = ok && critical[i] < critical[i - 1];
    const bool small = critical.back() < 0.05;
    d += small ? " (monotone, < 5% at t = 1e8)" : " (>= 5% at t = 1e8)";
    d += "; max/min over omega <= 20:";
    bool uniform = true;
    for (const auto& [t, errs] : by_t) {
        const double ratio = *std::max_element(errs.begin(), errs.end()) / *std::min_element(errs.begin(), errs.end());
        uniform = uniform && ratio <= 10;
        d += " " + fmt("%.3g", ratio);
    }
    d += uniform ? " (<= 10)" : " (limit 10 exceeded)";
    return {ok && small && uniform, d};
}

Outcome regime_slopes() {
    const SweepConfig c = sweep_config_from_json(load("regime_scaling.json"));
    const auto rows = run_sweep(c);
    std::map<double, std::pair<std::vector<double>, std::vector<double>>> by_omega;
    std::map<double, std::vector<double>> raw;
    for (const auto& r : rows) {
        if (!r.error.empty()) return {false, "row error: " + r.error};
        const DerivedParams d = derive({r.t, r.delta, r.sigma, r.lambda});
        const double key = std::round(r.omega * 1e6) / 1e6;
        by_omega[key].first.push_back(d.lambda_c * r.t);
        by_omega[key].second.push_back(std::abs(r.oracle / prefactor(d)));
        raw[key].push_back(std::abs(r.oracle));
    }
    bool ok = true;
    std::string d = "|J_B / prefactor| vs lambda_c t slopes:";
    std::string draw = "; raw |J_B| slopes:";
    for (const auto& [w, xy] : by_omega) {
        const double s = slope(xy.first, xy.second);
        ok = ok && std::abs(s + 0.5) <= 0.1;
        d += " " + fmt("%.3f", s);
        draw += " " + fmt("%.3f", slope(xy.first, raw[w]));
    }
    const SweepConfig lc = sweep_config_from_json(load("large_omega.json"));
    const auto lrows = run_sweep(lc);
    std::vector<double> w, gap;
    for (std::size_t i = 0; i + 1 < lrows.size(); i += 2) {
        if (!lrows[i].error.empty() || !lrows[i + 1].error.empty()) return {false, "row error"};
        w.push_back(lrows[i].omega);
        gap.push_back(rel(lrows[i + 1].approx, lrows[i].approx));
    }
    const double sg = slope(w, gap);
    ok = ok && std::abs(sg + 2) <= 0.3;
    return {ok, d + " (-0.5 +- 0.1)" + draw + "; large-omega gap slope in omega " + fmt("%.3f", sg) + " (-2 +- 0.3)"};
}

Outcome corollary() {
    const SweepConfig c = sweep_config_from_json(load("corollary.json"));
    const auto rows = run_sweep(c);
    std::vector<ComparisonRow> cor;
    std::vector<double> gaps;
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
        if (!rows[i].error.empty()) return {false, "row error: " + rows[i].error};
        cor.push_back(rows[i]);
        gaps.push_back(rel(rows[i].approx, rows[i + 1].approx));
    }
    const SlopeFit f = fit_error_slope(cor, SlopeAxis::T);
    const double limit = -(0.5 + c.delta / 4) + 0.1;
    const bool slope_ok = f.slope <= limit && f.conclusive();
    const bool gap_ok = gaps.back() < 0.02;
    std::string d = "error slope " + fmt("%.3f", f.slope) + " (<= " + fmt("%.3f", limit) + "), r^2 " +
                    fmt("%.3f", f.r_squared) + (slope_ok ? " ok" : " FAIL") + "; corollary/leading gap:";
    for (double x : gaps) d += " " + fmt("%.3g", x);
    d += gap_ok ? " (< 2% at t = 1e8)" : " (not below 2% at t = 1e8)";
    return {slope_ok && gap_ok, d};
}

Outcome exponent_identities() {
    const ScanReport r = property_scan(Suite::ExponentIdentity, scan_config_from_json(load("exponent_identity.json")));
    return {r.pass, std::to_string(r.samples) + " checks, worst margin " + g(r.worst_margin) +
                        " (1 - residual/allowed >= 0)"};
}

Outcome decomposition() {
    const json c = load("decomposition.json");
    const double t = c.at("t"), delta = c.at("delta"), tol = c.at("piece_tol"), thr = c.at("threshold");
    bool ok = true;
    std::string d = "residuals:";
    for (double L : c.at("Lambda").get<std::vector<double>>()) {
        const DecompositionResult r = decomposition_residual(ProblemParams::from_Lambda(t, delta, 0.5, L), tol);
        ok = ok && r.residual < thr;
        d += " Lambda=" + g(L) + ": " + g(r.residual);
    }
    return {ok, d + " (< " + g(thr) + ")"};
}

Outcome derivative_oracles() {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(0.2, 0.8), im(0.05, 0.4), ll(0.2, 2.0);
    const std::vector<double> hs{2e-3, 1e-3, 5e-4};
    double worst = 0;
    std::string which;
    auto record = [&](const std::vector<double>& err, const char* name) {
        const double s = slope(hs, err);
        if (std::abs(s - 2) > worst) {
            worst = std::abs(s - 2);
            which = name;
        }
    };
    using LC = std::complex<long double>;
    for (int s = 0; s < 20; ++s) {
        const LC z(re(rng), im(rng));
        const long double lambda = std::exp(ll(rng));
        std::vector<double> e1, e2;
        for (double h : hs) {
            const long double hh = h;
            e1.push_back(static_cast<double>(
                std::abs((big_f(LC(z + hh), lambda) - big_f(LC(z - hh), lambda)) / (2 * hh) - d_f(z, lambda))));
            e2.push_back(static_cast<double>(
                std::abs((d_f(LC(z + hh), lambda) - d_f(LC(z - hh), lambda)) / (2 * hh) - d2_f(z))));
        }
        record(e1, "d_f");
        record(e2, "d2_f");
    }
    const Complex dir = std::polar(1.0, pi_v<double> / 4);
    for (double L : {0.0, 1.0}) {
        const CovState cs = CovState::from(derive(ProblemParams::from_Lambda(100, 0.5, 0.5, L)));
        for (double x : {0.05, 0.2, 0.5}) {
            const Complex u = x * dir;
            std::vector<double> e;
            for (double h : hs)
                e.push_back(std::abs((zeta_of_u(u + h * dir, cs) - zeta_of_u(u - h * dir, cs)) / (2.0 * h * dir) -
                                     dzeta_du(u, cs)));
            record(e, "dzeta_du");
        }
    }
    for (int N = 1; N <= 3; ++N)
        for (int s = 0; s < 20; ++s) {
            const Complex z(re(rng), im(rng));
            const double lambda = std::exp(ll(rng)), t = 10;
            auto w = [&](Complex x) { return -apply_ibp_operator(N - 1, x, t, lambda) / (Complex(0, t) * d_f(x, lambda)); };
            std::vector<double> e;
            for (double h : hs) e.push_back(std::abs((w(z + h) - w(z - h)) / (2 * h) - apply_ibp_operator(N, z, t, lambda)));
            record(e, "apply_ibp_operator");
        }
    return {worst <= 0.2, "max |slope - 2| = " + fmt("%.3f", worst) + " (" + which + "), limit 0.2"};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "coefficient tables", 1, coefficient_tables},
        {2, "contour lemma scans", 30, lemma_scans},
        {3, "Fresnel tail", 5, fresnel},
        {4, "split exactness", 300, split_exactness},
        {5, "leading-order accuracy", 900, leading_order_accuracy},
        {6, "regime slopes", 600, regime_slopes},
        {7, "all-orders leading term", 1200, corollary},
        {8, "exponent identities", 60, exponent_identities},
        {9, "decomposition residual", 300, decomposition},
        {10, "derivative oracles", 120, derivative_oracles},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = s < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("criterion %2d %-4s %-24s %s [%.2f s, limit %.0f s%s]\n", c.id, pass ? "PASS" : "FAIL", c.name,
                    o.detail.c_str(), s, c.limit_s, in_time ? "" : ", over time");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
