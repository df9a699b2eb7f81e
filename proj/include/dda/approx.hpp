#ifndef DDA_APPROX_HPP
#define DDA_APPROX_HPP

#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "dda/quasinorm.hpp"

namespace dda {

// psi(t) = scale * t^{-tau}.  scale > 0, tau >= 0.
struct PowerLaw {
    double tau;
    double scale = 1.0;
};

// psi(t) = t^{-tau} * (log t)^{-beta}, with the log factor clamped to 1 for
// t <= e so the family stays positive and monotone near the origin.
struct PowerLog {
    double tau;
    double beta;
};

// Right-continuous step interpolation of monotone samples (t_i, y_i).
struct Table {
    std::vector<double> t;  // strictly increasing
    std::vector<double> y;  // non-increasing, positive
};

// A monotone non-increasing positive function psi on (0, inf).
class ApproxFunction {
public:
    ApproxFunction(PowerLaw f);   // NOLINT(google-explicit-constructor)
    ApproxFunction(PowerLog f);   // NOLINT(google-explicit-constructor)
    ApproxFunction(Table f);      // NOLINT(google-explicit-constructor)

    double operator()(double t) const;

    bool closed_form() const { return !std::holds_alternative<Table>(family_); }
    const std::variant<PowerLaw, PowerLog, Table>& family() const { return family_; }

    // Decay exponent tau_psi for closed-form families, if defined analytically.
    std::optional<double> analytic_lower_order() const;

private:
    std::variant<PowerLaw, PowerLog, Table> family_;
};

// liminf_{t->inf} -log psi(t) / log t, evaluated analytically for closed-form
// families and as a grid minimum over a geometric grid [t_max/100, t_max]
// otherwise.  Requires t_max >= 1e3.
double lower_order(const ApproxFunction& psi, double t_max);

// Psi(a) = psi(|a|_v): property P holds by construction.
class MultivariableApproxFunction {
public:
    MultivariableApproxFunction(ApproxFunction psi, QuasinormWeights v);

    double operator()(std::span<const long long> a) const;
    double operator()(std::span<const double> a) const;

    const ApproxFunction& psi() const { return psi_; }
    const QuasinormWeights& weights() const { return v_; }
    int n() const { return v_.n(); }

private:
    ApproxFunction psi_;
    QuasinormWeights v_;
};

} // namespace dda

#endif
