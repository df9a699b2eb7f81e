#ifndef DDA_MEASURE_HPP
#define DDA_MEASURE_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "dda/approx.hpp"
#include "dda/manifold.hpp"
#include "dda/sampling.hpp"

namespace dda {

// Fraction of N uniform samples x in B admitting a witness with
// H_lo < |a|_v <= H_hi.  Reproducible from the seed for any worker count.
MeasureEstimate fraction_with_witness_in(const MongeManifold& M, const Shift& theta,
                                         const MultivariableApproxFunction& Psi, const Box& B,
                                         double H_lo, double H_hi, long long N, uint64_t seed,
                                         int workers);

// Cumulative variant: every height up to H counts.
MeasureEstimate estimate_approximable_fraction(const MongeManifold& M, const Shift& theta,
                                               const MultivariableApproxFunction& Psi,
                                               const Box& B, double H, long long N,
                                               uint64_t seed, int workers);

enum class DichotomyMode { Cumulative, TailBlock };

struct DichotomyRow {
    double tau = 0.0;
    std::vector<std::pair<double, double>> fractions;  // (H, fraction)
    double trend = 0.0;                                // last fraction minus first
};

// For each tau, the fraction sequence over the H schedule.  Cumulative mode
// uses heights up to H; TailBlock uses the single block (H, 2H].  The same
// sample points are used at every H (same seed), so the rows are comparable.
std::vector<DichotomyRow> dichotomy_experiment(const MongeManifold& M, const Shift& theta,
                                               const QuasinormWeights& v,
                                               std::span<const double> taus,
                                               std::span<const double> H_schedule,
                                               DichotomyMode mode, const Box& B, long long N,
                                               uint64_t seed, int workers);

struct GoodTestResult {
    bool pass = false;
    double worst_ratio = 0.0;  // max over eps of measure / (C eps^alpha |B|)
    double worst_eps = 0.0;
    double sup = 0.0;          // grid sup of |g| over B
};

// Does |{x in B : |g(x)| < eps sup_B |g|}| <= C eps^alpha |B| hold for every
// eps in the grid?  Grid-estimated measures; a 1.05 slack factor absorbs the
// discretization.
GoodTestResult good_function_test(const std::function<double(const std::vector<double>&)>& g,
                                  const Box& B, double C, double alpha,
                                  std::span<const double> eps_grid, int grid_per_dim);

struct NiceTestResult {
    std::vector<std::pair<double, double>> fractions;  // (Q, fraction)
    double tail_max = 0.0;  // max fraction over the tail half of the schedule
    double bound = 0.0;     // C_config * delta
    bool within = false;
};

// Monte Carlo fractions of the homogeneous Dirichlet set over a Q schedule,
// compared against the configured linear-in-delta ceiling.
NiceTestResult nice_test(const MongeManifold& M, const Box& B, double delta,
                         const QuasinormWeights& v, std::span<const double> Qs, long long N,
                         uint64_t seed, int workers, double C_config);

struct BkmCheckResult {
    bool applicable = false;  // the |q| precondition held
    double L = 0.0;           // certified second-derivative bound
    double r = 0.0;           // ball radius (half the smallest box side)
    double qnorm = 0.0;       // |q| = max(|a_i|, 1)
    double threshold = 0.0;   // gradient threshold sqrt((n+1) m L |q|)
    double fraction = 0.0;    // measured fraction of B
    double ratio = 0.0;       // fraction / delta
};

// Grid-measures {x in B : ||a.f(x)+theta(x)|| < delta and |grad| >= threshold}
// with the gradient condition optionally dropped (the control case).
BkmCheckResult bkm_bound_check(const MongeManifold& M, const Shift& theta, const Box& B,
                               std::span<const long long> a, double delta, int grid_per_dim,
                               bool enforce_gradient = true);

} // namespace dda

#endif
