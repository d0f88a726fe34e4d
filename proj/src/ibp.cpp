#include "eu/ibp.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>

#include "eu/errors.hpp"
#include "eu/phase.hpp"

namespace eu {

namespace {

void fill_numeric(CoefficientTable& t) {
    t.numeric.assign(t.level + 1, std::vector<double>(t.level + 1, 0.0));
    for (int m = 0; m <= t.level; ++m)
        for (int n = 0; n <= t.level; ++n) t.numeric[m][n] = static_cast<double>(t.entries[m][n]);
}

CoefficientTable level_zero() {
    CoefficientTable t;
    t.level = 0;
    t.entries = {{Rational(1)}};
    fill_numeric(t);
    return t;
}

std::shared_mutex cache_mutex;
std::vector<std::shared_ptr<const CoefficientTable>> cache;

void require_half_sigma(const ProblemParams& p) {
    if (p.sigma != 0.5) fail(ErrorCode::SigmaUnsupported, "integration by parts requires sigma = 1/2");
}

}  // namespace

CoefficientTable next_level(const CoefficientTable& prev) {
    // d/dz of (1-z)^{-(2N-1)/2} z^{-m} F'^{-(N-1+n)} / (-i t) divided by -i t F'
    // gives (N+m-1/2) z^{-m}, -m z^{-(m+1)} and -(N+n) z^{-(m+1)} F'^{-1} pieces,
    // using (1-z)^{-1} = 1 + z/(1-z) and F'' = 1/(z(1-z)).
    const int N = prev.level + 1;
    CoefficientTable t;
    t.level = N;
    t.entries.assign(N + 1, std::vector<Rational>(N + 1, Rational(0)));
    for (int m = 0; m <= prev.level; ++m) {
        for (int n = 0; n <= prev.level; ++n) {
            const Rational& a = prev.entries[m][n];
            if (a == 0) continue;
            t.entries[m][n] += (Rational(2 * (N + m) - 1) / 2) * a;
            t.entries[m + 1][n] -= Rational(m) * a;
            t.entries[m + 1][n + 1] -= Rational(N - 1 + n + 1) * a;
        }
    }
    fill_numeric(t);
    return t;
}

std::shared_ptr<const CoefficientTable> amn_table(int N) {
    if (N < 0) fail(ErrorCode::InvalidParam, "table level must be non-negative");
    {
        std::shared_lock lock(cache_mutex);
        if (N < static_cast<int>(cache.size())) return cache[N];
    }
    std::unique_lock lock(cache_mutex);
    if (cache.empty()) cache.push_back(std::make_shared<const CoefficientTable>(level_zero()));
    while (static_cast<int>(cache.size()) <= N)
        cache.push_back(std::make_shared<const CoefficientTable>(next_level(*cache.back())));
    return cache[N];
}

double double_factorial(int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

Complex apply_ibp_operator(int N, Complex z, Complex one_minus_z, double t, double lambda,
                           const TableProvider& tables) {
    if (N < 0) fail(ErrorCode::InvalidParam, "operator power must be non-negative");
    const Complex fp = d_f(z, one_minus_z, lambda);
    if (std::abs(fp) < 1e-14) fail(ErrorCode::SingularPoint, "dF/dz vanishes at the evaluation point");
    const auto table = tables(N);
    const Complex zi = 1.0 / z;
    const Complex fi = 1.0 / fp;
    Complex sum(0.0, 0.0);
    Complex zm(1.0, 0.0);
    for (int m = 0; m <= N; ++m) {
        Complex fn(1.0, 0.0);
        for (int n = 0; n <= N; ++n) {
            const double a = table->numeric[m][n];
            if (a != 0) sum += a * zm * fn;
            fn *= fi;
        }
        zm *= zi;
    }
    const Complex mit(0.0, -t);
    return std::pow(one_minus_z, -(2.0 * N + 1) / 2) * std::pow(fi / mit, N) * sum;
}

Complex apply_ibp_operator(int N, Complex z, double t, double lambda) {
    return apply_ibp_operator(N, z, 1.0 - z, t, lambda);
}

ExpansionTerm t_term(int j, const ProblemParams& p, double k, const TableProvider& tables) {
    require_half_sigma(p);
    if (j < 1) fail(ErrorCode::InvalidParam, "term index starts at 1");
    const DerivedParams d = derive(p);
    if (!(k > 0 && k < d.eps)) fail(ErrorCode::SplitOutOfRange, "split offset k must lie in (0, t^{delta-1})");
    const double a = 1 - k / d.eps;
    const DerivedParams ds = choose_split_a(d, 4, a);
    const double D = ds.split->D;
    // e^{i t F(1-k)} from the endpoint phase plus an accurate increment.
    const Complex inc = p.t * big_f_increment(Complex(d.eps - k), d.eps, d.log1p_Lambda);
    const Complex e = std::polar(1.0, d.endpoint_phase) * std::exp(Complex(0.0, 1.0) * inc);
    // T_j = -G_{j-1}(1-k) e / (i t D), with G_{j-1} the level-(j-1) closed form.
    const auto table = tables(j - 1);
    Complex sum(0.0, 0.0);
    for (int m = 0; m <= j - 1; ++m)
        for (int n = 0; n <= j - 1; ++n) {
            const double c = table->numeric[m][n];
            if (c != 0) sum += c * std::pow(1 - k, -m) * std::pow(D, -n);
        }
    const Complex mit(0.0, -p.t);
    ExpansionTerm term;
    term.j = j;
    term.value = std::pow(k, -(2.0 * j - 1) / 2) / (std::pow(mit, j) * std::pow(D, j)) * sum * e;
    term.magnitude_bound = tj_bound(j - 1, p, a);
    return term;
}

double tj_bound(int j, const ProblemParams& p, double a) {
    if (j < 0) fail(ErrorCode::InvalidParam, "bound index must be non-negative");
    if (!(a > 0 && a < 1)) fail(ErrorCode::SplitOutOfRange, "a must lie in (0,1)");
    // Successive bounds shrink by (2j+1) t^{-delta} a^{-2}; require t^{-delta} a^{-2} < 1.
    if (!(std::pow(p.t, -p.delta) / (a * a) < 1))
        fail(ErrorCode::AssumptionViolated, "split variable too small: t^{-delta} a^{-2} >= 1");
    return double_factorial(2 * j - 1) * std::pow(p.t, -0.5 - (2 * j + 1) * p.delta / 2) * std::pow(a, -2 * j - 1);
}

double rn_bound(int N, const ProblemParams& p, double k) {
    if (N < 1) fail(ErrorCode::InvalidParam, "remainder index starts at 1");
    const DerivedParams d = derive(p);
    if (!(k > 0 && k < d.eps)) fail(ErrorCode::SplitOutOfRange, "split offset k must lie in (0, t^{delta-1})");
    const double Dm = std::log(d.eps / k);
    if (!(Dm < 1) || !(1 / (p.t * k * Dm * Dm) < 1))
        fail(ErrorCode::AssumptionViolated, "split violates D_- < 1 or t^{-1} k^{-1} D_-^{-2} < 1");
    return double_factorial(2 * N - 1) * std::pow(p.t, -N) * std::pow(std::log(p.t), (2.0 * N + 1) / 2) *
           std::pow(Dm, -2 * N) * std::pow(k, -(2.0 * N - 1) / 2);
}

SeriesResult jb2_series(const ProblemParams& p, double k, int j_max, const TableProvider& tables) {
    require_half_sigma(p);
    if (j_max < 0) fail(ErrorCode::InvalidParam, "j_max must be non-negative");
    SeriesResult s;
    for (int j = 1; j <= j_max; ++j) {
        s.terms.push_back(t_term(j, p, k, tables));
        s.value += s.terms.back().value;
    }
    const DerivedParams d = derive(p);
    const double a = 1 - k / d.eps;
    // Remainder after j_max + 1 integrations plus the first dropped boundary term.
    s.bound = rn_bound(j_max + 1, p, k) + tj_bound(j_max, p, a);
    return s;
}

}  // namespace eu
