#include "dda/constants.hpp"

#include <algorithm>

#include "dda/errors.hpp"

namespace dda {

PaperConstants::PaperConstants(int n_, int m_, double c0, double delta_, double v1_)
    : n(n_), m(m_), C0(c0), delta(delta_), v1(v1_) {
    if (n < 1 || m < 1) throw input_error("constants: need n >= 1 and m >= 1");
    if (!(C0 > 0.0)) throw input_error("constants: C0 must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw input_error("constants: delta must be in (0,1)");
    if (!(v1 > 0.0)) throw input_error("constants: v1 must be positive");
    C1 = std::sqrt(double(n + 1) * m * C0);
    C2 = std::pow(delta, -double(n));
    C3 = double(n + 3) * double(n + 3) * C0 * C2;
    C4 = double(n + 1) * C0 * std::max(C3, double(n + 1) * C2);
    p = 1.0 / (2.0 * m * C4);
    kappa1 = double(n + 1) * C2;
}

} // namespace dda
