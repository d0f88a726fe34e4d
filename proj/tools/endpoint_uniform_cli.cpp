#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eu/asymptotics.hpp"
#include "eu/contour.hpp"
#include "eu/errors.hpp"
#include "eu/harness.hpp"
#include "eu/ibp.hpp"
#include "eu/parameters.hpp"

using nlohmann::json;

namespace {

struct Flags {
    std::optional<double> t, delta, sigma, lambda, Lambda, b, a, tol;
    std::optional<int> m;
    std::optional<std::uint64_t> seed;
    std::vector<std::string> methods;
    std::string out, format, config, suite = "all";
};

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) eu::fail(eu::ErrorCode::InvalidParam, "cannot open config " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        eu::fail(eu::ErrorCode::InvalidParam, std::string("malformed config: ") + e.what());
    }
}

void reject_unknown(const json& j, const std::vector<std::string>& keys) {
    for (const auto& [k, v] : j.items())
        if (std::find(keys.begin(), keys.end(), k) == keys.end())
            eu::fail(eu::ErrorCode::InvalidParam, "unknown config key " + k);
}

template <class T>
void fill(std::optional<T>& dst, const json& j, const char* key) {
    if (dst || !j.contains(key) || j.at(key).is_null()) return;
    try {
        dst = j.at(key).get<T>();
    } catch (const json::exception& e) {
        eu::fail(eu::ErrorCode::InvalidParam, std::string("config key ") + key + ": " + e.what());
    }
}

// Point record {t, delta, sigma, lambda | Lambda, m, b, a, tol, method}; flags take precedence.
void merge_point_config(Flags& f) {
    if (f.config.empty()) return;
    const json j = read_json_file(f.config);
    if (!j.is_object()) eu::fail(eu::ErrorCode::InvalidParam, "config must be a JSON object");
    reject_unknown(j, {"t", "delta", "sigma", "lambda", "Lambda", "m", "b", "a", "tol", "method", "seed"});
    const bool flag_lambda = f.lambda || f.Lambda;
    if (!flag_lambda) {
        if (j.contains("lambda") && j.contains("Lambda"))
            eu::fail(eu::ErrorCode::InvalidParam, "lambda and Lambda are mutually exclusive");
        fill(f.lambda, j, "lambda");
        fill(f.Lambda, j, "Lambda");
    }
    fill(f.t, j, "t");
    fill(f.delta, j, "delta");
    fill(f.sigma, j, "sigma");
    fill(f.m, j, "m");
    fill(f.b, j, "b");
    fill(f.a, j, "a");
    fill(f.tol, j, "tol");
    fill(f.seed, j, "seed");
    if (f.methods.empty() && j.contains("method")) {
        const auto& v = j.at("method");
        if (v.is_array()) f.methods = v.get<std::vector<std::string>>();
        else f.methods = {v.get<std::string>()};
    }
}

eu::ProblemParams point(const Flags& f) {
    if (!f.t || !f.delta) eu::fail(eu::ErrorCode::InvalidParam, "--t and --delta are required");
    if (!f.lambda && !f.Lambda) eu::fail(eu::ErrorCode::InvalidParam, "one of --lambda or --Lambda is required");
    const double sigma = f.sigma.value_or(0.5);
    if (f.Lambda) return eu::ProblemParams::from_Lambda(*f.t, *f.delta, sigma, *f.Lambda);
    return {*f.t, *f.delta, sigma, *f.lambda};
}

json echo(const std::string& sub, const Flags& f) {
    json j{{"subcommand", sub}};
    auto put = [&](const char* k, const auto& v) {
        if (v) j[k] = *v;
    };
    put("t", f.t);
    put("delta", f.delta);
    put("sigma", f.sigma);
    put("lambda", f.lambda);
    put("Lambda", f.Lambda);
    put("m", f.m);
    put("b", f.b);
    put("a", f.a);
    put("tol", f.tol);
    put("seed", f.seed);
    if (!f.methods.empty()) j["method"] = f.methods;
    if (!f.config.empty()) j["config"] = f.config;
    if (!f.out.empty()) j["out"] = f.out;
    if (!f.format.empty()) j["format"] = f.format;
    if (sub == "verify") j["suite"] = f.suite;
    return j;
}

json params_json(const eu::DerivedParams& d) {
    return {{"t", d.p.t}, {"delta", d.p.delta}, {"sigma", d.p.sigma}, {"lambda", d.p.lambda},
            {"Lambda", d.Lambda}, {"omega", d.omega}, {"lambda_c", d.lambda_c}};
}

void emit(const Flags& f, const std::string& text) {
    if (f.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(f.out, std::ios::binary);
    if (!os) eu::fail(eu::ErrorCode::InvalidParam, "cannot write " + f.out);
    os << text;
}

std::string format_or(const Flags& f, const char* def) {
    const std::string fmt = f.format.empty() ? def : f.format;
    return fmt;
}

struct PointEval {
    json j;
    std::string method;
    eu::Complex value;
    double budget = 0;
    std::optional<int> m;
    std::optional<double> a;
};

PointEval eval_point(const eu::ProblemParams& p, const std::string& method, const Flags& f) {
    PointEval r;
    r.method = method;
    const eu::DerivedParams d = eu::derive(p);
    const double tol = f.tol.value_or(1e-10);
    if (method == "oracle") {
        const eu::QuadratureResult q = eu::jb_oracle(p, tol);
        r.value = q.value;
        r.budget = q.abs_error_estimate;
        r.j = {{"method", method}, {"re", q.value.real()}, {"im", q.value.imag()},
               {"abs_err", q.abs_error_estimate}, {"panels", q.panels}, {"truncation_bound", q.truncation_bound},
               {"tol", tol}};
    } else {
        eu::Approximation ap;
        if (method == "leading") {
            ap = eu::leading_order(p);
        } else if (method == "large-omega") {
            ap = eu::leading_order_large_omega(p);
        } else if (method == "all-orders") {
            const int m = f.m.value_or(4);
            const eu::DerivedParams ds = f.a ? eu::choose_split_a(d, m, *f.a) : eu::choose_split(d, m, f.b);
            ap = eu::all_orders(p, m, ds.split->a);
            r.m = m;
            r.a = ds.split->a;
        } else if (method == "corollary") {
            ap = eu::corollary_leading(p);
            r.m = 4;
            r.a = eu::choose_split(d, 4).split->a;
        } else {
            eu::fail(eu::ErrorCode::InvalidParam, "unknown method " + method);
        }
        r.value = ap.value;
        r.budget = ap.budget_total();
        json budget = json::array();
        for (const auto& [label, v] : ap.error_budget) budget.push_back({{"term", label}, {"value", v}});
        r.j = {{"method", method}, {"re", ap.value.real()}, {"im", ap.value.imag()}, {"budget", r.budget},
               {"budget_terms", budget}, {"regime", eu::to_string(ap.regime)}};
        if (r.m) {
            r.j["m"] = *r.m;
            r.j["a"] = *r.a;
        }
    }
    r.j["params"] = params_json(d);
    return r;
}

int cmd_eval(const std::string& sub, Flags& f) {
    merge_point_config(f);
    std::string method = sub == "oracle" ? "oracle" : (f.methods.empty() ? "leading" : f.methods.front());
    if (sub == "eval" && f.methods.size() > 1) eu::fail(eu::ErrorCode::InvalidParam, "eval takes a single --method");
    PointEval r = eval_point(point(f), method, f);
    r.j["invocation"] = echo(sub, f);
    const std::string fmt = format_or(f, "json");
    const json& pj = r.j["params"];
    if (fmt == "json") {
        emit(f, r.j.dump(2) + "\n");
    } else if (fmt == "csv") {
        std::ostringstream os;
        os << "t,delta,sigma,lambda,Lambda,omega,method,m,a,re,im,budget\n"
           << num(pj["t"]) << ',' << num(pj["delta"]) << ',' << num(pj["sigma"]) << ',' << num(pj["lambda"]) << ','
           << num(pj["Lambda"]) << ',' << num(pj["omega"]) << ',' << method << ','
           << (r.m ? std::to_string(*r.m) : "") << ',' << (r.a ? num(*r.a) : "") << ',' << num(r.value.real())
           << ',' << num(r.value.imag()) << ',' << num(r.budget) << '\n';
        emit(f, os.str());
    } else {
        std::ostringstream os;
        os << method << " t=" << num(pj["t"]) << " lambda=" << num(pj["lambda"]) << " omega=" << num(pj["omega"])
           << "\n  value  " << num(r.value.real()) << (r.value.imag() < 0 ? " - " : " + ")
           << num(std::abs(r.value.imag())) << "i\n  budget " << num(r.budget) << '\n';
        emit(f, os.str());
    }
    return 0;
}

std::string rows_text(const std::vector<eu::ComparisonRow>& rows) {
    std::ostringstream os;
    char buf[256];
    std::snprintf(buf, sizeof buf, "%-12s %-12s %-10s %-12s %-12s %-12s %s\n", "t", "omega", "method", "rel_err",
                  "abs_err", "budget", "error");
    os << buf;
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-12.5g %-12.5g %-10s %-12.4e %-12.4e %-12.4e %s\n", r.t, r.omega,
                      r.method.c_str(), r.rel_err, r.abs_err, r.budget, r.error.c_str());
        os << buf;
    }
    return os.str();
}

int emit_rows(const std::string& sub, const Flags& f, const std::vector<eu::ComparisonRow>& rows, const char* def) {
    const std::string fmt = format_or(f, def);
    if (fmt == "csv") {
        emit(f, eu::to_csv(rows));
    } else if (fmt == "json") {
        json arr = json::array();
        for (const auto& r : rows) arr.push_back(eu::to_json(r));
        emit(f, json{{"invocation", echo(sub, f)}, {"rows", arr}}.dump(2) + "\n");
    } else {
        emit(f, rows_text(rows));
    }
    return 0;
}

int cmd_compare(Flags& f) {
    merge_point_config(f);
    const eu::ProblemParams p = point(f);
    eu::SweepConfig c;
    c.t_grid = {p.t};
    c.delta = p.delta;
    c.sigma = p.sigma;
    c.lambda_spec = {eu::LambdaSpecKind::LambdaGrid, {p.lambda}};
    c.omega_cap = std::numeric_limits<double>::infinity();
    c.methods = f.methods.empty() ? std::vector<std::string>{"oracle", "leading", "large-omega", "all-orders", "corollary"}
                                  : f.methods;
    c.tol = f.tol.value_or(c.tol);
    c.m = f.m.value_or(c.m);
    c.b = f.b;
    c.a = f.a;
    c.record_runtime = true;
    eu::derive(p);
    return emit_rows("compare", f, eu::run_sweep(c), "json");
}

int cmd_sweep(Flags& f) {
    if (f.config.empty()) eu::fail(eu::ErrorCode::InvalidParam, "sweep requires --config");
    eu::SweepConfig c = eu::sweep_config_from_json(read_json_file(f.config));
    if (f.t) c.t_grid = {*f.t};
    if (f.delta) c.delta = *f.delta;
    if (f.sigma) c.sigma = *f.sigma;
    if (f.lambda) c.lambda_spec = {eu::LambdaSpecKind::LambdaGrid, {*f.lambda}};
    if (f.Lambda) c.lambda_spec = {eu::LambdaSpecKind::LambdaGrid,
                                   {eu::ProblemParams::from_Lambda(c.t_grid.front(), c.delta, c.sigma, *f.Lambda).lambda}};
    if (!f.methods.empty()) c.methods = f.methods;
    if (f.tol) c.tol = *f.tol;
    if (f.seed) c.seed = *f.seed;
    if (f.m) c.m = *f.m;
    if (f.b) c.b = f.b;
    if (f.a) c.a = f.a;
    return emit_rows("sweep", f, eu::run_sweep(c), "csv");
}

json table_json(const eu::CoefficientTable& tab) {
    json entries = json::array();
    for (int m = 0; m <= tab.level; ++m)
        for (int n = 0; n <= tab.level; ++n) {
            const eu::Rational& v = tab.at(m, n);
            if (v == 0) continue;
            entries.push_back({{"m", m}, {"n", n}, {"num", boost::multiprecision::numerator(v).str()},
                               {"den", boost::multiprecision::denominator(v).str()}});
        }
    return {{"level", tab.level}, {"entries", entries}};
}

int cmd_terms(Flags& f) {
    merge_point_config(f);
    const int m = f.m.value_or(4);
    if (m < 1) eu::fail(eu::ErrorCode::InvalidParam, "--m must be positive");
    const int n_max = 2 * m - 2;
    json out{{"invocation", echo("terms", f)}, {"m", m}};
    json tables = json::array();
    for (int N = 0; N <= n_max; ++N) tables.push_back(table_json(*eu::amn_table(N)));
    out["tables"] = tables;
    std::ostringstream text;
    if (f.t || f.lambda || f.Lambda) {
        const eu::ProblemParams p = point(f);
        const eu::DerivedParams d0 = eu::derive(p);
        const eu::DerivedParams d = f.a ? eu::choose_split_a(d0, m, *f.a) : eu::choose_split(d0, m, f.b);
        const eu::SplitParams& s = *d.split;
        out["params"] = params_json(d);
        out["split"] = {{"m", s.m}, {"b", s.b}, {"a", s.a}, {"k", s.k}, {"D", s.D}, {"D_minus", s.D_minus}};
        json terms = json::array();
        for (int j = 1; j <= n_max; ++j) {
            const eu::ExpansionTerm term = eu::t_term(j, p, s.k);
            terms.push_back({{"j", j}, {"re", term.value.real()}, {"im", term.value.imag()},
                             {"abs", std::abs(term.value)}, {"magnitude_bound", term.magnitude_bound}});
            text << "T" << j << "  " << num(term.value.real()) << ' ' << num(term.value.imag()) << "  |T|="
                 << num(std::abs(term.value)) << "  bound=" << num(term.magnitude_bound) << '\n';
        }
        out["terms"] = terms;
        out["remainder_bound"] = eu::rn_bound(n_max, p, s.k);
    }
    if (format_or(f, "json") == "json") {
        emit(f, out.dump(2) + "\n");
    } else {
        std::ostringstream os;
        for (const auto& tab : out["tables"]) {
            os << "N=" << tab["level"].get<int>() << ':';
            for (const auto& e : tab["entries"])
                os << " A" << e["m"].get<int>() << e["n"].get<int>() << '=' << e["num"].get<std::string>()
                   << (e["den"] == "1" ? "" : "/" + e["den"].get<std::string>());
            os << '\n';
        }
        emit(f, os.str() + text.str());
    }
    return 0;
}

eu::ScanConfig scan_config(const Flags& f) {
    eu::ScanConfig c = f.config.empty() ? eu::ScanConfig{} : eu::scan_config_from_json(read_json_file(f.config));
    if (f.t) c.t_grid = {*f.t};
    if (f.delta) c.delta_grid = {*f.delta};
    if (f.seed) c.seed = *f.seed;
    if (f.tol) c.tol = *f.tol;
    return c;
}

int cmd_verify(Flags& f) {
    std::vector<eu::Suite> suites;
    if (f.suite == "all") {
        suites = eu::all_suites();
    } else {
        const auto s = eu::suite_from_string(f.suite);
        if (!s) eu::fail(eu::ErrorCode::InvalidParam, "unknown suite " + f.suite);
        suites = {*s};
    }
    const eu::ScanConfig c = scan_config(f);
    bool pass = true;
    json reports = json::array();
    std::ostringstream text;
    for (eu::Suite s : suites) {
        const eu::ScanReport r = eu::property_scan(s, c);
        pass = pass && r.pass;
        reports.push_back(eu::to_json(r));
        text << (r.pass ? "PASS " : "FAIL ") << r.suite << "  worst_margin=" << num(r.worst_margin)
             << "  samples=" << r.samples << '\n';
    }
    if (format_or(f, "json") == "json")
        emit(f, json{{"invocation", echo("verify", f)}, {"pass", pass}, {"reports", reports}}.dump(2) + "\n");
    else
        emit(f, text.str());
    if (!pass) {
        std::cerr << json{{"error", {{"code", "VerificationFailed"}, {"message", "one or more suites failed"}}}}.dump()
                  << '\n';
        return 2;
    }
    return 0;
}

void error_json(const std::string& code, const std::string& msg) {
    std::cerr << json{{"error", {{"code", code}, {"message", msg}}}}.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Endpoint-uniform asymptotics of J_B: quadrature oracle, uniform and split-contour expansions"};
    app.require_subcommand(1, 1);
    Flags f;
    const std::vector<std::string> methods{"oracle", "leading", "large-omega", "all-orders", "corollary"};
    auto common = [&](CLI::App* sc, bool multi_method) {
        sc->add_option("--t", f.t, "large parameter t");
        sc->add_option("--delta", f.delta, "delta in (0, 1)");
        sc->add_option("--sigma", f.sigma, "sigma in [1/2, 1)");
        auto* l = sc->add_option("--lambda", f.lambda, "lambda > 0");
        auto* L = sc->add_option("--Lambda", f.Lambda, "rescaled offset, lambda = lambda_c (1 + Lambda)");
        l->excludes(L);
        L->excludes(l);
        auto* mo = sc->add_option("--method", f.methods, "method")->check(CLI::IsMember(methods));
        if (multi_method) mo->delimiter(',');
        else mo->expected(1);
        sc->add_option("--m", f.m, "expansion order m");
        auto* b = sc->add_option("--b", f.b, "split exponent, a = t^{-b delta}");
        auto* a = sc->add_option("--a", f.a, "split offset a in (0, 1)");
        b->excludes(a);
        a->excludes(b);
        sc->add_option("--tol", f.tol, "relative quadrature tolerance");
        sc->add_option("--seed", f.seed, "seed for randomized scan points");
        sc->add_option("--out", f.out, "output path (default stdout)");
        sc->add_option("--format", f.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        sc->add_option("--config", f.config, "JSON config");
    };
    auto* eval = app.add_subcommand("eval", "evaluate J_B by one method");
    auto* oracle = app.add_subcommand("oracle", "direct contour quadrature of J_B");
    auto* compare = app.add_subcommand("compare", "all methods against the oracle at one point");
    auto* sweep = app.add_subcommand("sweep", "parameter sweep from a JSON config");
    auto* terms = app.add_subcommand("terms", "A_mn tables and T_j terms");
    auto* verify = app.add_subcommand("verify", "property scan suites");
    common(eval, false);
    common(oracle, false);
    common(compare, true);
    common(sweep, true);
    common(terms, false);
    common(verify, false);
    verify->add_option("--suite", f.suite, "all or a suite name");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        error_json("UsageError", e.what());
        return 1;
    }

    try {
        if (eval->parsed()) return cmd_eval("eval", f);
        if (oracle->parsed()) return cmd_eval("oracle", f);
        if (compare->parsed()) return cmd_compare(f);
        if (sweep->parsed()) return cmd_sweep(f);
        if (terms->parsed()) return cmd_terms(f);
        if (verify->parsed()) return cmd_verify(f);
    } catch (const eu::Error& e) {
        error_json(eu::to_string(e.code()), e.what());
        return eu::is_parameter_error(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        error_json("InternalError", e.what());
        return 2;
    }
    return 0;
}
