#ifndef DDA_GROSHEV_HPP
#define DDA_GROSHEV_HPP

#include <string>
#include <utility>
#include <vector>

#include "dda/approx.hpp"

namespace dda {

enum class Verdict { Converges, Diverges, Undecided };
enum class CriterionKind { ConvergencePart, DivergencePart };

const char* to_string(Verdict v);
const char* to_string(CriterionKind k);

// Outcome of a series classification, with the dyadic block sums that back
// the verdict.  blocks[i] = (k, envelope sum over 2^k < |a|_v <= 2^{k+1}).
struct CriterionReport {
    CriterionKind kind = CriterionKind::ConvergencePart;
    Verdict verdict = Verdict::Undecided;
    std::vector<std::pair<int, double>> blocks;
    std::string rationale;

    std::string to_json() const;
};

// Number of integer vectors in the dyadic quasinorm block (2^k, 2^{k+1}]:
// exact lattice counts for k <= 12, the fitted c * 2^{kn} beyond.
double block_count(int k, const QuasinormWeights& v);

// Does sum_{a != 0} Psi(a) converge?  Analytic for closed-form psi
// (power law: tau > n; power-log: tau > n, or tau = n with beta > 1);
// dyadic envelope comparison otherwise, Undecided when 60 blocks do not
// certify either way.
CriterionReport classify_convergence_sum(const MultivariableApproxFunction& Psi, int n);

// Does sum_{a != 0} |a| (Psi(a)/|a|)^{s+1-m} diverge?  s > m-1 required.
// For a power law the block exponent is n + v1 - (tau + v1)(s + 1 - m);
// divergence iff it is >= 0, i.e. s <= m - 1 + (n + v1)/(tau + v1)
// (= m - 1 + (n+1)/(tau+1) for unit weights).
CriterionReport classify_divergence_sum(const MultivariableApproxFunction& Psi, int n, int m,
                                        double s);

// The dimension lower bound m - 1 + (n+1)/(tau+1).  Stated for tau >= n;
// smaller tau sets *warning and still returns the formula value.
double critical_exponent(int m, int n, double tau, bool* warning = nullptr);

} // namespace dda

#endif
