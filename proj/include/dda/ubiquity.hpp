#ifndef DDA_UBIQUITY_HPP
#define DDA_UBIQUITY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dda/constants.hpp"
#include "dda/manifold.hpp"
#include "dda/quasinorm.hpp"

namespace dda {

// Integer linear form F = a0 + a . f over a Monge manifold.
struct ResonantFunction {
    std::vector<long long> a;  // not all zero
    long long a0 = 0;

    double height(const QuasinormWeights& v) const;  // H_v(F) = max |a_i|^{1/v_i}
    double eval(const MongeManifold& M, const Shift& theta, std::span<const double> x) const;
    // gradient of F + theta, length m
    std::vector<double> gradient(const MongeManifold& M, const Shift& theta,
                                 std::span<const double> x) const;
};

// Discretized zero set of F + theta on a box U0, optionally trimmed so that
// the projection to the last m-1 coordinates is a union of half-balls of
// 3 rho(beta_F)-balls inside the projected zero set.
struct ResonantSurface {
    ResonantFunction F;
    int m = 1;
    double p = 0.0;         // first-coordinate dominance constant
    double rho_beta = 0.0;  // rho(beta_F)
    bool trimmed = true;
    bool extra_ok = false;  // |d1(F+theta)| > p |grad(F+theta)| on the whole grid

    // one localized root per occupied fiber (points on the zero set)
    std::vector<std::vector<double>> points;
    double fiber_pitch = 0.0;

    bool empty() const { return points.empty(); }
};

// Builds the discretized resonant surface on U0.  With trim = true the
// result is empty whenever the dominance condition fails anywhere on U0, and
// the projection is trimmed by 1.5 rho(beta_F) at the ends of each run of
// occupied fibers (runs shorter than 6 rho(beta_F) disappear entirely).  With
// trim = false the raw zero set is kept (the control case).
// Throws resolution_error when the fiber pitch exceeds rho_at_beta / 2.
ResonantSurface trim_resonant(const ResonantFunction& F, const Shift& theta,
                              const MongeManifold& M, const Box& U0, double p,
                              double rho_at_beta, int fibers = 1024, bool trim = true);

// Supremum-norm distance from x to the discretized surface is < r.
bool delta_neighborhood_member(std::span<const double> x, const ResonantSurface& S, double r);

struct IntersectionConditionsReport {
    bool vacuous = false;  // empty surface: nothing to check
    double c1 = 0.0, c2 = 0.0;
    double min_ratio_lower = 0.0;  // min over samples of lhs / (|B(c,lambda)| (rho/lambda)^g)
    double max_ratio_upper = 0.0;  // max over samples of lhs / (|B(c,lambda)| (rB/lambda)^g)
    bool lower_ok = false;         // min_ratio_lower >= 0.95 c1
    bool upper_ok = false;         // max_ratio_upper <= 1.05 c2
    double pitch = 0.0;
    std::string to_json() const;
};

// Grid-measures both intersection conditions on balls centred on the surface
// for every lambda in the grid (0 < lambda <= rho_t) and reports the worst
// ratios against c1 = 2^{-2m+3}/v_m and c2 = 3 m 2^m/(p v_m), where
// v_m = 2^m is the volume of the m-dimensional supremum-norm unit ball.
IntersectionConditionsReport check_intersection_conditions(const ResonantSurface& S,
                                                           double rho_t,
                                                           std::span<const double> lambdas,
                                                           int ball_samples);

struct CoveringReport {
    long long samples = 0;
    long long in_dirichlet = 0;   // x in Phi_v(Q, delta): not part of the claim
    long long constructed = 0;    // construction succeeded outside Phi
    long long covered = 0;        // landed within rho(Q) of the resonant zero set
    long long failures = 0;       // construction or localization failures
    double fraction = 0.0;        // covered / (samples - in_dirichlet)
    double floor = 0.0;           // 2^{-m-1} (1 - omega)
    std::string to_json() const;
};

// Monte Carlo check of the covering property at Q = 2^t on the concentric
// half of U0: every sampled x outside the Dirichlet set should land in
// Delta(R_F, rho(Q)) for the constructed resonant function F.  omega is the
// Dirichlet-set density bound feeding the floor 2^{-m-1}(1 - omega).
CoveringReport estimate_covering_property(const MongeManifold& M, const Shift& theta,
                                          const Box& U0, int t, const QuasinormWeights& v,
                                          const PaperConstants& consts, long long N,
                                          uint64_t seed, double omega = 0.0);

} // namespace dda

#endif
