#ifndef DDA_DIMENSION_HPP
#define DDA_DIMENSION_HPP

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dda/approx.hpp"
#include "dda/manifold.hpp"

namespace dda {

struct DimensionEstimate {
    std::vector<double> scales;    // dyadic box sizes, decreasing
    std::vector<long long> counts; // occupied-box counts
    double slope = 0.0;            // least squares of log2 count vs -log2 scale
    double r2 = 0.0;
    double bound = 0.0;            // comparison value (critical exponent)
    bool reliable = false;         // non-degenerate fit with r2 >= 0.98
    std::string to_json() const;
};

// Counts boxes of size e covering the domain of M that meet the truncated
// approximable set {x : some |a|_v <= H has ||a.f(x)+theta(x)|| < Psi(a)}.
// Occupancy is decided at the box centre with the Lipschitz slack
// m/2 * e * (C0 sum|a_i| + sup|grad theta|) added to the allowance.
long long cover_truncated_set(const MongeManifold& M, const Shift& theta,
                              const MultivariableApproxFunction& Psi, double H, double e);

// Truncation height tied to the box size: min(H_cap, e^{-1/(tau+1)}).
double truncation_height(double e, double tau, double H_cap);

// Least-squares slope of log2 count against -log2 scale.  Needs at least 5
// scales spanning at least 3 dyadic octaves; refuses a verdict (reliable =
// false) when the fit quality drops below 0.98 or all counts coincide.
DimensionEstimate estimate_box_dimension(std::span<const double> scales,
                                         std::span<const long long> counts,
                                         double bound = 0.0);

// Runs the truncation-adapted schedule e = 2^{-k} for k in [k_min, k_max]
// with H = truncation_height(e, tau, H_cap) and fits the slope.  The bound
// field is filled with critical_exponent(m, n, tau).
DimensionEstimate truncated_dimension_experiment(const MongeManifold& M, const Shift& theta,
                                                 const QuasinormWeights& v, double tau,
                                                 double psi_scale, double H_cap, int k_min,
                                                 int k_max);

// Boxes of size e met by the graph {(x, g(x)) : x in [lo, hi]}; per-column
// ranges are taken over 17 samples (exact for monotone pieces of width e).
long long cover_function_graph(const std::function<double(double)>& g, double lo, double hi,
                               double e);

} // namespace dda

#endif
