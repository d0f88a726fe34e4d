#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eu/parameters.hpp"
#include "eu/types.hpp"

namespace eu {

enum class LambdaSpecKind { Critical, LambdaGrid, OmegaGrid };

struct LambdaSpec {
    LambdaSpecKind kind = LambdaSpecKind::Critical;
    std::vector<double> values;
};

struct SweepConfig {
    std::vector<double> t_grid{1e4, 1e5, 1e6, 1e7, 1e8};
    double delta = 0.5;
    double sigma = 0.5;
    LambdaSpec lambda_spec{LambdaSpecKind::OmegaGrid, {0, 0.5, 1, 2, 5, 10, 20}};
    std::vector<std::string> methods{"leading"};  // oracle|leading|large-omega|all-orders|corollary
    double tol = 1e-10;
    std::uint64_t seed = 0;
    int m = 4;
    std::optional<double> b;
    std::optional<double> a;
    double omega_cap = 20.0;
    bool record_runtime = true;
    int threads = 0;  // 0: ENDPOINT_UNIFORM_THREADS or hardware concurrency

    void validate() const;
};

SweepConfig sweep_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepConfig& c);

struct ComparisonRow {
    double t = 0, delta = 0, sigma = 0, lambda = 0, Lambda = 0, omega = 0;
    std::string method;
    int m = 0;
    double a = 0;
    Complex approx, oracle;
    double abs_err = 0, rel_err = 0, budget = 0, runtime_ms = 0;
    std::string error;
};

// (t, lambda) points of a sweep, in row order.
std::vector<ProblemParams> sweep_points(const SweepConfig& cfg);

std::vector<ComparisonRow> run_sweep(const SweepConfig& cfg);

inline const char* csv_header =
    "t,delta,sigma,lambda,Lambda,omega,method,m,a,approx_re,approx_im,oracle_re,oracle_im,"
    "abs_err,rel_err,budget,runtime_ms,error";

std::string to_csv(const std::vector<ComparisonRow>& rows);
nlohmann::json to_json(const ComparisonRow& r);

enum class SlopeAxis { T, Omega, A };

struct SlopeFit {
    double slope = 0, intercept = 0, r_squared = 0;
    int n = 0;
    bool conclusive() const { return r_squared >= 0.95; }
};

SlopeFit fit_error_slope(const std::vector<ComparisonRow>& rows, SlopeAxis x, double floor = 1e-300);
SlopeFit fit_log_log(const std::vector<double>& x, const std::vector<double>& y);

enum class Suite { ImFNonneg, PhaseLowerBound, SplitConsistency, FresnelAsym, CovDecomposition, ExponentIdentity };

const char* to_string(Suite s);
std::optional<Suite> suite_from_string(const std::string& s);
std::vector<Suite> all_suites();

struct ScanConfig {
    std::vector<double> t_grid{1e4, 1e5, 1e6, 1e7, 1e8};
    std::vector<double> delta_grid{0.4, 0.5, 0.6};
    std::uint64_t seed = 1;
    int n_pairs = 100;
    int n_R = 1000;
    double tol = 1e-10;
    std::optional<double> D_minus;  // fix the split so that D_- takes this value
    bool corrupt_a11 = false;       // fault injection for the term-consistency check
};

struct ScanReport {
    std::string suite;
    nlohmann::json grid;
    bool pass = false;
    double worst_margin = 0;
    nlohmann::json worst_point;
    long samples = 0;
};

// Keys t_grid, delta_grid, seed, n_pairs, n_R, tol, D_minus; unknown keys are rejected.
ScanConfig scan_config_from_json(const nlohmann::json& j);

ScanReport property_scan(Suite suite, const ScanConfig& cfg = {});
nlohmann::json to_json(const ScanReport& r);

// Oracle tolerance for a point whose methods expect relative error expected_rel.
double oracle_tolerance(double cfg_tol, double expected_rel);

int worker_count(int requested);

}  // namespace eu
