#include "dda/approx.hpp"

#include <algorithm>
#include <cmath>

#include "dda/errors.hpp"

namespace dda {

ApproxFunction::ApproxFunction(PowerLaw f) : family_(f) {
    if (!(f.tau >= 0.0) || !(f.scale > 0.0))
        throw input_error("power law psi: need tau >= 0 and scale > 0");
}

ApproxFunction::ApproxFunction(PowerLog f) : family_(f) {
    if (!(f.tau >= 0.0)) throw input_error("power-log psi: need tau >= 0");
}

ApproxFunction::ApproxFunction(Table f) : family_(std::move(f)) {
    const auto& t = std::get<Table>(family_);
    if (t.t.size() != t.y.size() || t.t.empty())
        throw input_error("table psi: need matching non-empty sample vectors");
    for (size_t i = 0; i < t.t.size(); ++i) {
        if (!(t.y[i] > 0.0)) throw input_error("table psi: samples must be positive");
        if (i > 0 && !(t.t[i] > t.t[i - 1]))
            throw input_error("table psi: abscissae must be strictly increasing");
        if (i > 0 && t.y[i] > t.y[i - 1])
            throw input_error("table psi: samples must be non-increasing");
    }
}

double ApproxFunction::operator()(double t) const {
    if (!(t > 0.0)) throw input_error("psi: argument must be positive");
    return std::visit(
        [t](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, PowerLaw>) {
                return f.scale * std::pow(t, -f.tau);
            } else if constexpr (std::is_same_v<T, PowerLog>) {
                const double lg = std::max(std::log(t), 1.0);
                return std::pow(t, -f.tau) * std::pow(lg, -f.beta);
            } else {
                // right-continuous step function
                auto it = std::upper_bound(f.t.begin(), f.t.end(), t);
                if (it == f.t.begin()) return f.y.front();
                return f.y[static_cast<size_t>(it - f.t.begin()) - 1];
            }
        },
        family_);
}

std::optional<double> ApproxFunction::analytic_lower_order() const {
    if (auto* p = std::get_if<PowerLaw>(&family_)) return p->tau;
    if (auto* p = std::get_if<PowerLog>(&family_)) return p->tau;
    return std::nullopt;
}

double lower_order(const ApproxFunction& psi, double t_max) {
    if (!(t_max >= 1e3)) throw input_error("lower_order: t_max must be >= 1e3");
    if (auto a = psi.analytic_lower_order()) return *a;
    const int kPoints = 256;
    const double lo = t_max / 100.0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < kPoints; ++i) {
        const double t = lo * std::pow(t_max / lo, i / double(kPoints - 1));
        const double y = psi(t);
        if (!(y > 0.0) || !std::isfinite(y))
            throw evaluation_error("lower_order: psi non-positive or non-finite on grid");
        best = std::min(best, -std::log(y) / std::log(t));
    }
    return best;
}

MultivariableApproxFunction::MultivariableApproxFunction(ApproxFunction psi, QuasinormWeights v)
    : psi_(std::move(psi)), v_(std::move(v)) {}

double MultivariableApproxFunction::operator()(std::span<const long long> a) const {
    const double q = eval_quasinorm(a, v_);
    if (q == 0.0) throw input_error("Psi: undefined for the zero vector");
    return psi_(q);
}

double MultivariableApproxFunction::operator()(std::span<const double> a) const {
    const double q = eval_quasinorm(a, v_);
    if (q == 0.0) throw input_error("Psi: undefined for the zero vector");
    return psi_(q);
}

} // namespace dda
