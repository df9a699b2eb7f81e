#ifndef DDA_CONSTANTS_HPP
#define DDA_CONSTANTS_HPP

#include <cmath>

namespace dda {

// The explicit constants of the construction, all derived from (n, m, C0,
// delta).  delta is the Dirichlet-set parameter in (0,1); rho is the
// ubiquity radius function r -> kappa1 * r^{-n-v1}.
struct PaperConstants {
    int n = 0;
    int m = 0;
    double C0 = 0.0;
    double delta = 0.5;
    double v1 = 1.0;

    double C1 = 0.0;      // sqrt((n+1) m C0)
    double C2 = 0.0;      // delta^{-n}
    double C3 = 0.0;      // (n+3)^2 C0 C2
    double C4 = 0.0;      // (n+1) C0 max{C3, (n+1) C2}
    double p = 0.0;       // (2 m C4)^{-1}
    double kappa1 = 0.0;  // (n+1) C2

    PaperConstants() = default;
    PaperConstants(int n_, int m_, double c0, double delta_ = 0.5, double v1_ = 1.0);

    double rho(double r) const { return kappa1 * std::pow(r, -double(n) - v1); }
};

} // namespace dda

#endif
