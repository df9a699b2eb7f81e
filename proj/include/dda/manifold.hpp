#ifndef DDA_MANIFOLD_HPP
#define DDA_MANIFOLD_HPP

#include <span>
#include <string>
#include <vector>

namespace dda {

// Axis-aligned box in R^m.
struct Box {
    std::vector<double> lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
    bool contains(std::span<const double> x) const;
    double diameter() const;  // sup-norm
    static Box interval(double a, double b) { return Box{{a}, {b}}; }
    static Box square(double a, double b) { return Box{{a, a}, {b, b}}; }
};

// A C^2 map f:U -> R^n in Monge form, f_i(x) = x_i for i <= m.  The non
// trivial components above index m are polynomial (m = 1), the sphere patch
// or the paraboloid (m = 2), or further copies of the coordinates (identity).
class MongeManifold {
public:
    static MongeManifold veronese(int n, Box domain = Box::interval(-1.0, 1.0));
    static MongeManifold sphere_patch(Box domain = Box::square(-0.5, 0.5));
    static MongeManifold paraboloid(Box domain = Box::square(-1.0, 1.0));
    static MongeManifold identity(int n, Box domain);
    // m = 1: each extra component given by polynomial coefficients (c0, c1, ...).
    static MongeManifold curve(std::vector<std::vector<double>> component_coeffs,
                               Box domain = Box::interval(-1.0, 1.0));

    int m() const { return domain_.dim(); }
    int n() const { return n_; }
    const Box& domain() const { return domain_; }
    const std::string& name() const { return name_; }

    // f(x); throws domain_error when x is outside U (or the sphere patch cap).
    std::vector<double> eval(std::span<const double> x) const;
    // n x m Jacobian, row-major.
    std::vector<double> gradient(std::span<const double> x) const;
    // m x m Hessian of component `comp` (0-based), row-major.
    std::vector<double> hessian(int comp, std::span<const double> x) const;

    // Grid supremum of |f|, |grad f| and |Hess f| entries; pitch <= diam(U)/1024.
    double certify_c0() const;

private:
    enum class Kind { Veronese, SpherePatch, Paraboloid, Identity, Curve };

    MongeManifold(Kind kind, int n, Box domain, std::string name,
                  std::vector<std::vector<double>> coeffs = {});
    void check_domain(std::span<const double> x) const;

    Kind kind_;
    int n_;
    Box domain_;
    std::string name_;
    std::vector<std::vector<double>> coeffs_;  // Curve components above m
};

// Scalar C^2 inhomogeneous shift theta on U.  Constant for any m; polynomial
// in x_1 for m = 1 (covers the algebraic-integer shift theta(x) = x^{n+1}).
class Shift {
public:
    static Shift zero();
    static Shift constant(double c);
    static Shift poly(std::vector<double> coeffs);  // c0 + c1 x + c2 x^2 + ...

    double eval(std::span<const double> x) const;
    std::vector<double> gradient(std::span<const double> x) const;   // length m
    std::vector<double> hessian(std::span<const double> x) const;    // m x m

    bool is_zero() const;
    double sup_c0(const Box& domain) const;  // grid sup of |theta|,|grad|,|hess|
    const std::string& name() const { return name_; }

private:
    Shift(std::vector<double> coeffs, std::string name);
    std::vector<double> coeffs_;
    std::string name_;
};

} // namespace dda

#endif
