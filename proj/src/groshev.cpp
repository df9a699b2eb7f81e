#include "dda/groshev.hpp"

#include <cmath>

#include <json.hpp>

#include "dda/errors.hpp"
#include "dda/lattice.hpp"

namespace dda {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Converges: return "Converges";
        case Verdict::Diverges: return "Diverges";
        default: return "Undecided";
    }
}

const char* to_string(CriterionKind k) {
    return k == CriterionKind::ConvergencePart ? "ConvergencePart" : "DivergencePart";
}

std::string CriterionReport::to_json() const {
    nlohmann::json j;
    j["kind"] = to_string(kind);
    j["verdict"] = to_string(verdict);
    auto arr = nlohmann::json::array();
    for (const auto& [k, sum] : blocks) arr.push_back({k, sum});
    j["blocks"] = std::move(arr);
    j["rationale"] = rationale;
    return j.dump(2);
}

namespace {

constexpr int kExactBlocks = 12;

double exact_ball_count(double Q, const QuasinormWeights& v) {
    return static_cast<double>(HeightBox::make(Q, v).count());
}

// Fitted leading coefficient of N_k ~ c 2^{kn} from the last exact blocks.
double fitted_block_coefficient(const QuasinormWeights& v) {
    const int n = v.n();
    double c = 0.0;
    int used = 0;
    for (int k = kExactBlocks - 2; k <= kExactBlocks; ++k) {
        const double nk = exact_ball_count(std::pow(2.0, k + 1), v) -
                          exact_ball_count(std::pow(2.0, k), v);
        c += nk / std::pow(2.0, double(k) * n);
        ++used;
    }
    return c / used;
}

} // namespace

double block_count(int k, const QuasinormWeights& v) {
    if (k < 0) throw input_error("block_count: k must be >= 0");
    if (k <= kExactBlocks)
        return exact_ball_count(std::pow(2.0, k + 1), v) -
               exact_ball_count(std::pow(2.0, k), v);
    return fitted_block_coefficient(v) * std::pow(2.0, double(k) * v.n());
}

CriterionReport classify_convergence_sum(const MultivariableApproxFunction& Psi, int n) {
    if (Psi.n() != n) throw input_error("classify_convergence_sum: n mismatch");
    const auto& v = Psi.weights();
    const auto& psi = Psi.psi();

    CriterionReport rep;
    rep.kind = CriterionKind::ConvergencePart;

    const int n_blocks = psi.closed_form() ? 40 : 60;
    std::vector<double> upper(n_blocks), lower(n_blocks);
    for (int k = 0; k < n_blocks; ++k) {
        const double nk = block_count(k, v);
        upper[k] = nk * psi(std::pow(2.0, k));
        lower[k] = nk * psi(std::pow(2.0, k + 1));
        rep.blocks.emplace_back(k, upper[k]);
    }

    if (auto* p = std::get_if<PowerLaw>(&psi.family())) {
        rep.verdict = p->tau > n ? Verdict::Converges : Verdict::Diverges;
        rep.rationale = "power law: block sums scale like 2^{k(n-tau)}; the series "
                        "converges exactly when tau > n";
        return rep;
    }
    if (auto* p = std::get_if<PowerLog>(&psi.family())) {
        const bool conv = p->tau > n || (p->tau == double(n) && p->beta > 1.0);
        rep.verdict = conv ? Verdict::Converges : Verdict::Diverges;
        rep.rationale = "power-log: block sums scale like 2^{k(n-tau)} k^{-beta}; "
                        "convergence needs tau > n, or tau = n with beta > 1";
        return rep;
    }

    // table family: compare the dyadic envelopes over the computed blocks
    bool geometric_decay = true, bounded_below = true;
    const int tail = n_blocks - 10;
    for (int k = tail; k < n_blocks; ++k) {
        if (!(upper[k] <= 0.95 * upper[k - 1])) geometric_decay = false;
        if (!(lower[k] >= 0.99 * lower[tail - 1]) || !(lower[k] > 0.0)) bounded_below = false;
    }
    if (geometric_decay && upper[n_blocks - 1] < 1e-6) {
        rep.verdict = Verdict::Converges;
        rep.rationale = "table: upper block envelope decays geometrically over the tail";
    } else if (bounded_below) {
        rep.verdict = Verdict::Diverges;
        rep.rationale = "table: lower block envelope stays bounded away from zero";
    } else {
        rep.verdict = Verdict::Undecided;
        rep.rationale = "table: neither envelope certifies within the block budget";
    }
    return rep;
}

CriterionReport classify_divergence_sum(const MultivariableApproxFunction& Psi, int n, int m,
                                        double s) {
    if (Psi.n() != n) throw input_error("classify_divergence_sum: n mismatch");
    if (!(s > m - 1)) throw input_error("classify_divergence_sum: need s > m-1");
    const auto& v = Psi.weights();
    const auto& psi = Psi.psi();
    const double e = s + 1.0 - m;  // the outer exponent, positive by the precondition

    CriterionReport rep;
    rep.kind = CriterionKind::DivergencePart;

    const int n_blocks = psi.closed_form() ? 40 : 60;
    std::vector<double> upper(n_blocks), lower(n_blocks);
    for (int k = 0; k < n_blocks; ++k) {
        const double nk = block_count(k, v);
        const double amax = std::pow(2.0, double(k) * v.v1());  // sup-norm scale of the block
        upper[k] = nk * amax * std::pow(psi(std::pow(2.0, k)) / amax, e);
        lower[k] = nk * amax * std::pow(psi(std::pow(2.0, k + 1)) / amax, e);
        rep.blocks.emplace_back(k, upper[k]);
    }

    // block exponent for psi(t) = t^{-tau}: n + v1 - (tau + v1) e
    if (auto a = psi.analytic_lower_order()) {
        const double tau = *a;
        const double exponent = n + v.v1() - (tau + v.v1()) * e;
        bool diverges;
        if (std::abs(exponent) <= 1e-12) {
            // boundary: block sums behave like k^{-beta e} for the log-refined family
            double beta = 0.0;
            if (auto* p = std::get_if<PowerLog>(&psi.family())) beta = p->beta;
            diverges = beta * e <= 1.0;
        } else {
            diverges = exponent > 0.0;
        }
        rep.verdict = diverges ? Verdict::Diverges : Verdict::Converges;
        rep.rationale = "closed form: block exponent n + v1 - (tau + v1)(s+1-m) = " +
                        std::to_string(exponent) +
                        "; divergence iff it is >= 0 (log factors decide the boundary)";
        return rep;
    }

    bool geometric_decay = true, bounded_below = true;
    const int tail = n_blocks - 10;
    for (int k = tail; k < n_blocks; ++k) {
        if (!(upper[k] <= 0.95 * upper[k - 1])) geometric_decay = false;
        if (!(lower[k] >= 0.99 * lower[tail - 1]) || !(lower[k] > 0.0)) bounded_below = false;
    }
    if (bounded_below) {
        rep.verdict = Verdict::Diverges;
        rep.rationale = "table: lower block envelope stays bounded away from zero";
    } else if (geometric_decay && upper[n_blocks - 1] < 1e-6) {
        rep.verdict = Verdict::Converges;
        rep.rationale = "table: upper block envelope decays geometrically over the tail";
    } else {
        rep.verdict = Verdict::Undecided;
        rep.rationale = "table: neither envelope certifies within the block budget";
    }
    return rep;
}

double critical_exponent(int m, int n, double tau, bool* warning) {
    if (m < 1 || n < 1) throw input_error("critical_exponent: need m, n >= 1");
    if (!(tau > 0.0)) throw input_error("critical_exponent: tau must be positive");
    if (warning) *warning = tau < n;
    return m - 1 + double(n + 1) / (tau + 1.0);
}

} // namespace dda
