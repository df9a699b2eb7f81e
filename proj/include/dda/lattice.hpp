#ifndef DDA_LATTICE_HPP
#define DDA_LATTICE_HPP

#include <functional>
#include <optional>
#include <vector>

#include "dda/approx.hpp"
#include "dda/constants.hpp"
#include "dda/manifold.hpp"
#include "dda/quasinorm.hpp"

namespace dda {

// Per-coordinate limits L_i = max{k : k^{1/v_i} <= Q}, so that the integer
// points with |a|_v <= Q are exactly the box |a_i| <= L_i.
struct HeightBox {
    std::vector<long long> limits;

    static HeightBox make(double Q, const QuasinormWeights& v);
    long long count() const;  // prod(2 L_i + 1) - 1, zero excluded
};

// Lexicographic stream over Z^n \ {0} with |a|_v <= Q.
class HeightEnumerator {
public:
    HeightEnumerator(double Q, const QuasinormWeights& v);
    // Advances to the next tuple; false when exhausted.
    bool next(std::vector<long long>& out);
    const HeightBox& box() const { return box_; }

private:
    HeightBox box_;
    std::vector<long long> cur_;
    bool started_ = false;
    bool done_ = false;
};

// Convenience at desk scale: the full list, lexicographic order.
std::vector<std::vector<long long>> enumerate_heights(double Q, const QuasinormWeights& v);

struct Witness {
    std::vector<long long> a;
    long long a0 = 0;
    std::vector<double> x;
    double err = 0.0;     // |a0 + a.f(x) + theta(x)|
    double height = 0.0;  // |a|_v
};

// Nearest-integer completion: a0 = -round(s), ties to even.
long long nearest_integer_completion(double s);
// Distance to the nearest integer.
double dist_to_integer(double s);

// Minimizes err over all a with |a|_v <= Q; ties (within 1e-12) broken by
// lexicographically smallest a.
Witness best_dual_approx(std::span<const double> x, const MongeManifold& M,
                         const Shift& theta, double Q, const QuasinormWeights& v);

struct DirichletResult {
    bool member = false;
    std::optional<Witness> witness;
};

// Membership in the Dirichlet set: some a with |a|_v <= Q achieves
// ||a.f(x)|| < delta Q^{-n}.  Homogeneous (theta = 0) by definition; for
// delta >= 1 membership is immediate and a witness is attached when the
// search finds one.
DirichletResult dirichlet_member(std::span<const double> x, const MongeManifold& M,
                                 double Q, double delta, const QuasinormWeights& v);

// All witnesses with H_lo < |a|_v <= H_hi and ||a.f(x)+theta(x)|| < Psi(a).
// Psi values >= 1/2 always admit the tuple (||.|| <= 1/2).  H_lo >= 1/2 so
// the first block (1/2, 1] captures the unit-height vectors.
std::vector<Witness> witnesses_in_block(std::span<const double> x, const MongeManifold& M,
                                        const Shift& theta,
                                        const MultivariableApproxFunction& Psi,
                                        double H_lo, double H_hi);

// Output of the constructive step behind the covering property: a resonant
// function F = a0 + a.f with all postconditions evaluated at the input point.
struct ConstructionResult {
    std::vector<long long> a;
    long long a0 = 0;
    double height = 0.0;        // H_v(F)
    double kappa0 = 0.0;        // global: beta_F = kappa0 H_v(F) <= Q
    double kappa0_star = 0.0;   // lower sandwich constant
    double beta = 0.0;

    double value_at_x = 0.0;    // (F + theta)(x)
    double deriv1_at_x = 0.0;   // d/dx1 (F + theta)(x)

    bool vb1 = false;           // |F+theta|(x) <= (n+1) C2 Q^{-n}
    bool vb2 = false;           // |d1(F+theta)(x)| >= Q^{v1}
    bool vb3 = false;           // <= (2 n C0 + 1) Q^{v1}
    bool vb4 = false;           // |a_j| <= (n+1) C2 Q^{v_j} (j>=2), |a_1| <= C3 Q^{v1}
    bool sandwich = false;      // kappa0* Q <= beta_F <= Q
    bool extra_at_x = false;    // |d1| > p |grad| at x

    std::vector<std::vector<long long>> basis;  // the n+1 independent vectors (a0,...,an)
    std::vector<double> eta;
    std::vector<long long> rounding;
};

// Realizes the covering-property construction at a point x outside the
// Dirichlet set: finds n+1 independent integer vectors in the C2-dilated
// convex body, solves the interpolation system, rounds, and reports the
// resulting resonant function together with its checked postconditions.
ConstructionResult successive_minima_construct(std::span<const double> x,
                                               const MongeManifold& M, const Shift& theta,
                                               double Q, const PaperConstants& consts,
                                               const QuasinormWeights& v);

// Localizes a zero of f near x1: requires |f'| >= d on [lo, hi] (grid
// checked) and the ball around x1 of radius |f(x1)|/d to fit inside.
double root_localize(const std::function<double(double)>& f,
                     const std::function<double(double)>& fprime,
                     double x1, double lo, double hi, double d);

// Exact integer rank of row vectors (fraction-free elimination).
int integer_rank(std::vector<std::vector<long long>> rows);

} // namespace dda

#endif
