#ifndef DBAR_GEOMETRY_HPP
#define DBAR_GEOMETRY_HPP

#include "dbar/forms.hpp"
#include "dbar/model.hpp"

#include <functional>
#include <string>
#include <vector>

namespace dbar {

/// A radial metric/weight pair on the disc of radius R (in r = |z|^2) or
/// on all of C^n.  kind selects how the metric is generated: from a
/// Kahler potential h(|z|^2) or from a conformal factor e^{phi(|z|^2)}
/// scaling the Euclidean metric.  Evaluators supply value and the first
/// two derivatives.
struct RadialProfile {
    enum class Kind { KahlerPotential, ConformalFactor };
    Kind kind;
    std::function<double(double)> f, fp, fpp;       // h-tilde resp. phi-tilde
    std::function<double(double)> psi, psip, psipp; // weight psi-tilde
    double sup_radius = 1.0;                        // domain [0, R); inf for C^n
};

/// The metric/weight profile realizing one of the four models.
RadialProfile builtin_profile(const ModelSpec& model);

/// Build a profile from expressions over {r, +, -, *, /, ^, log, exp};
/// derivatives by 5-point central differences with step 1e-5 * (1 + r).
RadialProfile profile_from_expressions(RadialProfile::Kind kind, const std::string& f_expr,
                                       const std::string& psi_expr, double sup_radius);

/// Evaluate an expression in the profile grammar at radius r (exposed for
/// the CLI and tests).
double evaluate_expression(const std::string& expr, double r);

/// Chebyshev-spaced 1000-point grid on [0, R(1 - 1e-6)] (ball) or [0, 50]
/// (unbounded domain); clusters near the boundary where the curvature
/// condition degenerates.
std::vector<double> radial_grid(double sup_radius);

struct GeometryReport {
    std::vector<double> grid;
    bool has_constant = false;              // constancy_defect < 1e-8
    double holomorphicity_constant = 0.0;   // grid mean of the coefficient
    double constancy_defect = 0.0;          // max |c(r) - mean|
    std::vector<double> coefficient;        // sampled c(r)
    std::vector<double> torsion_coefficient; // (n-1) phi'(r)
    std::vector<double> torsion_norm;        // |tau|_h^2 on the grid
    std::vector<double> min_eigenvalue;      // curvature verdict per radius
    double min_eigenvalue_overall = 0.0;
};

/// Samples c(r) = psi'/(h' + r h'') for a Kahler-potential profile; the
/// sharp dual vector field is holomorphic iff c is constant.  Throws on a
/// non-positive metric denominator.
GeometryReport check_kahler_duality(const RadialProfile& profile);

/// Samples c(r) = e^{-phi}(psi' - (n-1) phi') for a conformal profile.
GeometryReport check_conformal_duality(const RadialProfile& profile, int n);

/// Torsion trace coefficient (n-1) phi'(r) and its squared metric norm
/// (n-1)^2 (phi')^2 r e^{-phi}; identically zero for n = 1 and for
/// Kahler profiles.
GeometryReport torsion_profile(const RadialProfile& profile, int n);

/// Minimum eigenvalue of i ddbar psi + Theta - (sigma/(sigma-1)) i T.Tbar
/// - epsilon omega_h over the radial grid.  sigma <= 1 disables the
/// torsion term (the pure Remark-style test); it is ignored anyway for
/// Kahler profiles, whose torsion vanishes.  The rank-one structure
/// a I + b zbar z^T gives the two candidate eigenvalues analytically.
GeometryReport curvature_condition(const RadialProfile& profile, int n, double epsilon,
                                   double sigma = 0.0);
GeometryReport curvature_condition(const ModelSpec& model, double epsilon,
                                   double sigma = 0.0);

/// Largest epsilon for which curvature_condition(model, epsilon) stays
/// nonnegative (within -1e-10), located by bisection on [lo, hi] to 1e-6.
double curvature_threshold(const ModelSpec& model, double lo, double hi);

/// Term-by-term audit of the basic identity on a polynomial (1,0)-form:
/// ||dbar u - Tu||^2 + ||dbar* u||^2 = G + (i ddbar psi + Theta, u ^ u).
/// Restricted to the torsion-free feasible cases (Segal-Bargmann, cigar,
/// n=1 exponential weight); reports the implied gradient term G and its
/// ratio to the Chern-connection derivative norm.
struct BasicIdentityReport {
    double dbar_term = 0.0;        // ||dbar u||^2  (T u = 0 here)
    double adjoint_term = 0.0;     // ||dbar* u||^2
    double curvature_term = 0.0;   // curvature pairing
    double projection_defect = 0.0;
    double gradient_term = 0.0;    // G = dbar_term + adjoint_term - curvature_term
    double gradient_norm = 0.0;    // ||nabla u||^2, Chern (1,0)-derivative
    double ratio = 0.0;            // gradient_term / gradient_norm
};

BasicIdentityReport basic_identity_diagnostic(const ModelSpec& model,
                                              const FormCoefficients& u, int nodes = 40);

} // namespace dbar

#endif
