#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "eu/parameters.hpp"
#include "eu/types.hpp"

namespace eu {

using Rational = boost::multiprecision::cpp_rational;

// A_mn of (d/dz (-1/(i t F')))^N (1-z)^{-1/2}
//   = (1-z)^{-(2N+1)/2} / ((-i t)^N F'^N) sum_{m,n} A_mn z^{-m} F'^{-n}.
struct CoefficientTable {
    int level = 0;
    std::vector<std::vector<Rational>> entries;  // entries[m][n], 0 <= m, n <= level
    std::vector<std::vector<double>> numeric;    // entries converted to double

    const Rational& at(int m, int n) const { return entries.at(m).at(n); }
};

// Level 0 is the identity table {A_00 = 1}. Tables are memoized.
std::shared_ptr<const CoefficientTable> amn_table(int N);

// Builds level N from level N - 1 without touching the cache.
CoefficientTable next_level(const CoefficientTable& prev);

using TableProvider = std::function<std::shared_ptr<const CoefficientTable>(int)>;

Complex apply_ibp_operator(int N, Complex z, Complex one_minus_z, double t, double lambda,
                           const TableProvider& tables = amn_table);
Complex apply_ibp_operator(int N, Complex z, double t, double lambda);

struct ExpansionTerm {
    int j = 0;
    Complex value;
    double magnitude_bound = 0.0;
};

// Boundary term of the j-th integration by parts of J_B2 at z = 1 - k (j >= 1).
ExpansionTerm t_term(int j, const ProblemParams& p, double k, const TableProvider& tables = amn_table);

// (2j-1)!! t^{-1/2-(2j+1) delta/2} a^{-2j-1}; bounds t_term(j + 1).
double tj_bound(int j, const ProblemParams& p, double a);

// (2N-1)!! t^{-N} (ln t)^{(2N+1)/2} D_-^{-2N} k^{-(2N-1)/2}.
double rn_bound(int N, const ProblemParams& p, double k);

struct SeriesResult {
    Complex value;
    std::vector<ExpansionTerm> terms;
    double bound = 0.0;
};

SeriesResult jb2_series(const ProblemParams& p, double k, int j_max,
                        const TableProvider& tables = amn_table);

double double_factorial(int n);  // (n)!! with (-1)!! = 1

}  // namespace eu
