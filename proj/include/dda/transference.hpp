#ifndef DDA_TRANSFERENCE_HPP
#define DDA_TRANSFERENCE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dda/manifold.hpp"

namespace dda {

// Index pair (a, a0) of the transference machinery.
struct TransferencePoint {
    std::vector<long long> a;
    long long a0 = 0;
};

// |t| = max_i t_i (supremum norm on the index set).
int abs_t(std::span<const int> t);
long long sum_t(std::span<const int> t);

// log2 of Psi0(2^t) = prod 2^{-t_i}: exact integer exponent.
long long log2_Psi0(std::span<const int> t);
// log2 of phi_delta(t) = 2^{delta |t|}.
double log2_phi(double delta, std::span<const int> t);
// r(t) = sqrt(2 (n+1) m C0) * 2^{|t|/2}.
double r_scale(std::span<const int> t, int n, int m, double C0);

// phi_delta(t) * Psi0(2^t) < 2^{-(3/4)|t|}, decided in integer arithmetic
// with delta given in hundredths (valid for 0 <= delta < 1/4 and t != 0).
bool phi_psi0_below_three_quarters(std::span<const int> t, int delta_centi);

// Dyadic bracket of the inhomogeneous system: 2^{t_i} <= max(1,|a_i|) < 2^{t_i+1}.
bool dyadic_bracket(std::span<const long long> a, std::span<const int> t);

// Membership in I_t(alpha, eps): value, gradient, and dyadic bracket.
bool in_I(std::span<const double> x, std::span<const int> t, const TransferencePoint& alpha,
          double eps, const MongeManifold& M, const Shift& theta, double C0);

// Membership in H_t(alpha, eps): homogeneous, doubled tolerances, coefficient
// bound |a_i| < 2^{t_i+2}.
bool in_H(std::span<const double> x, std::span<const int> t, const TransferencePoint& alpha,
          double eps, const MongeManifold& M, double C0);

struct IntersectionReport {
    long long trials = 0;
    long long constructed = 0;  // samples with both memberships verified
    long long passes = 0;       // constructed samples whose difference lands in H
    long long zero_diff_pairs = 0;  // pairs differing only in a0 that were doubly members
    bool pass = false;
    std::string note;
    std::string to_json() const;
};

// Samples doubly-member triples (x, alpha, alpha') around the flat point of
// the curve and checks that the difference alpha' - alpha satisfies the
// subtraction inequalities and lands in H_t; also probes that a pair
// differing only in a0 is never doubly member (|t| >= 2 required).
IntersectionReport verify_intersection_property(const MongeManifold& M, const Shift& theta,
                                                std::span<const int> t, double delta,
                                                long long trials, uint64_t seed);

} // namespace dda

#endif
