#include "eu/phase.hpp"

namespace eu {

TaylorCoefficients taylor_c(int n_max, double t, double delta, double lambda) {
    if (n_max < 2) fail(ErrorCode::InvalidParam, "n_max must be at least 2");
    using ld = long double;
    const ld eps = std::pow(ld(t), ld(delta) - 1);
    const ld lc = eps / (1 - eps);
    TaylorCoefficients tc;
    tc.c.resize(n_max + 1);
    tc.c[0] = static_cast<double>(big_f<ld>(ComplexT<ld>(1 - eps), ComplexT<ld>(eps), ld(lambda)).real());
    tc.c[1] = static_cast<double>(eps * (std::log(ld(lambda)) - std::log(lc)));
    ld pw = -lc;  // (-lambda_c)^{n-1}
    for (int n = 2; n <= n_max; ++n) {
        tc.c[n] = static_cast<double>(eps / (ld(n) * (n - 1)) * (1 - pw));
        pw *= -lc;
    }
    return tc;
}

}  // namespace eu
