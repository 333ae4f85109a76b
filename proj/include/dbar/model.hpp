#ifndef DBAR_MODEL_HPP
#define DBAR_MODEL_HPP

#include <string>

namespace dbar {

enum class ModelKind {
    SegalBargmann,          // C^n, flat metric, psi = |z|^2
    HyperbolicExponential,  // unit ball, Bergman-Kahler metric, psi = alpha/(1-|z|^2)
    ConformalStandard,      // unit ball, (1-|z|^2)^{-1} delta metric, Bergman weight gamma
    Cigar,                  // C, (1+|z|^2)^{-1} metric, psi = alpha log(1+|z|^2)
};

/// One of the four concrete geometric models.  Immutable value type.
struct ModelSpec {
    ModelKind kind;
    int n = 1;           // complex dimension
    double alpha = 0.0;  // hyperbolic / cigar weight parameter
    double gamma = 0.0;  // conformal-standard Bergman exponent; alpha = 1 - n - gamma

    static ModelSpec segal_bargmann(int n);
    static ModelSpec hyperbolic(int n, double alpha);     // requires alpha > 0
    static ModelSpec standard(int n, double gamma);       // requires gamma > 0
    static ModelSpec cigar(double alpha);                 // requires alpha >= 2

    bool ball_domain() const { return kind == ModelKind::HyperbolicExponential || kind == ModelKind::ConformalStandard; }
    std::string name() const;
};

/// The constant c with adjoint(u_j dz^j) = c * sum_j z^j u_j.
double duality_constant(const ModelSpec& model);

/// Radon-Nikodym density of the weighted volume measure against Lebesgue
/// measure, as a function of t = |z|^2.  Throws std::domain_error for t
/// outside the model domain ([0,1) for ball models, [0,inf) otherwise).
double radial_weight_density(const ModelSpec& model, double t);

/// Scalar factor the metric applies to a diagonal (p,0)-component pairing
/// relative to the p=0 density.  For the non-conformal hyperbolic metric
/// this is the factor multiplying the Kronecker-delta part of the pairing;
/// the cross terms are handled in the norm/Gram machinery.
double metric_component_scale(const ModelSpec& model, double t, int p);

} // namespace dbar

#endif
