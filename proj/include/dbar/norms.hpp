#ifndef DBAR_NORMS_HPP
#define DBAR_NORMS_HPP

#include "dbar/forms.hpp"
#include "dbar/linalg.hpp"
#include "dbar/model.hpp"
#include "dbar/multiindex.hpp"
#include "dbar/quadrature.hpp"

#include <complex>
#include <map>
#include <vector>

namespace dbar {

/// ln of the angular factor ang(J) = pi^n J! / (n-1+|J|)! appearing in the
/// polar reduction  int |z^J|^2 g(|z|^2) dlambda = ang(J) int_0^R t^{|J|+n-1} g(t) dt.
double log_angular_factor(const MultiIndex& j);

/// Radial moment int t^{m+n-1} s_p(t) w(t) dt over the model domain, where
/// w is the radial weight density and s_p the metric scale for degree p.
/// Computed by the model's native quadrature (Gauss-Legendre on [0,1] after
/// substitution for the ball and cigar models, Gauss-Laguerre on [0,inf)
/// for the flat and exponential weights), escalating N -> 2N until the
/// relative change drops below 1e-8.  Throws accuracy_error if the change
/// still exceeds 1e-6 at N = 200, and domain_error when the cigar moment
/// diverges (integrability needs |J| < alpha - p).
double radial_moment(const ModelSpec& model, int m, int p, int nodes);

/// One-dimensional integral with the escalation protocol of radial_moment:
/// evaluate with an n0-node rule of the given kind, double until stable.
double escalated_integral(QuadKind kind, int n0, const std::function<double(double)>& f);

/// Exponential-weight radial family Hyp(m, q) =
/// int_0^1 t^{m+n-1} (1-t)^q e^{-alpha/(1-t)} dt, evaluated through the
/// substitution 1-t = alpha/(s+alpha) as
/// alpha^{q+1} e^{-alpha} int_0^inf s^{m+n-1} (s+alpha)^{-(m+n+q+1)} e^{-s} ds
/// with Gauss-Laguerre (integrand in log space).  q = -n-1, -n, 1-n cover
/// degrees p = 0, 1, 2.
double hyp_radial(const ModelSpec& model, int m, double q, int nodes);

/// Squared norm of the basis monomial in closed Gamma form.  Available for
/// SegalBargmann (pi^n J! at every degree), ConformalStandard
/// (c_J^2, d_J^2 via Beta integrals) and Cigar (Beta integrals, finite
/// only while |J| < alpha - p).  HyperbolicExponential has no elementary
/// closed form; requesting it throws domain_error pointing at
/// norm_quadrature.
double norm_closed_form(const ModelSpec& model, int p, const MultiIndex& j);

/// Squared norm by the polar reduction with quadrature radial factor.
/// For the non-conformal hyperbolic metric the p >= 1 "norm" is the
/// diagonal Gram entry of z^J dz^a (p=1) or z^J dz^a ^ dz^b (p=2); pass
/// the component(s) accordingly (ignored by the conformal-type models).
/// nodes is the starting rule size (>= 10); escalation as in radial_moment.
double norm_quadrature(const ModelSpec& model, int p, const MultiIndex& j,
                       int a, int nodes, int b = -1);

/// Pairing <z^J comp_x, z^K comp_y> of two basis monomials in the weighted
/// metric inner product of degree p.  Real by radial symmetry.  Handles
/// the hyperbolic cross terms (nonzero off-diagonal iff J + e_a = K + e_c
/// type matchings); conformal-type models are diagonal.
double pair_monomials(const ModelSpec& model, int p, const FormKey& x,
                      const FormKey& y, int nodes = 40);

/// Full sesquilinear inner product <u, v> of two forms of equal degree.
std::complex<double> inner_product(const FormCoefficients& u, const FormCoefficients& v,
                                   int nodes = 40);

/// Relative residual of the adjointness pairing behind the duality
/// identities: |<dbar z^{J+_k 1}, z^J dz^k> - c * ||z^{J+_k 1}||^2| /
/// ||z^J dz^k||^2 with c the model's duality constant.  For diagonal
/// metrics this reduces to |c c^2_{J+_k 1} - (j_k+1) d_J^2| / d_J^2.
/// Closed forms are used when available, quadrature otherwise.
double verify_duality_identity(const ModelSpec& model, const MultiIndex& j, int k);

/// Ordered basis keys of the degree-invariant block {|J| = m} at form
/// degree p: J enumerated first-component-descending, then components
/// ascending (p=1: k = 0..n-1; p=2: pairs (a,b), a < b, lexicographic).
std::vector<FormKey> block_basis(const ModelSpec& model, int m, int p);

/// Gram matrix of block_basis(model, m, p) in the weighted metric inner
/// product.  Diagonal for the conformal-type models; tridiagonal-sparse
/// coupling for the hyperbolic metric.  Always symmetric positive definite.
SymmetricMatrix gram_block(const ModelSpec& model, int m, int p, int nodes = 40);

/// Cache of log squared norms (diagonal Gram entries) per (J, component).
/// Built once per (model, p), immutable afterwards, safe to share across
/// threads.  Stores ln of the squared norm; |J| ~ 40 under small gamma
/// would underflow a linear-scale cache.
class NormTable {
public:
    enum class Method { ClosedForm, Quadrature };

    NormTable(ModelSpec model, int p, int max_order, int nodes = 40);

    const ModelSpec& model() const { return model_; }
    int degree_p() const { return p_; }
    int max_order() const { return max_order_; }
    Method method() const { return method_; }

    double log_squared_norm(const FormKey& key) const;
    double squared_norm(const FormKey& key) const;
    /// Normalizing constant 1/sqrt(squared_norm) in log space.
    double log_scale(const FormKey& key) const { return -0.5 * log_squared_norm(key); }

private:
    ModelSpec model_;
    int p_;
    int max_order_;
    Method method_;
    std::map<FormKey, double> log_norms_;
};

} // namespace dbar

#endif
