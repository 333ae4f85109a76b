#ifndef DBAR_QUADRATURE_HPP
#define DBAR_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace dbar {

enum class QuadKind {
    GaussLegendre01, // integrates f over [0,1]
    GaussLaguerre,   // integrates f(s) e^{-s} over [0,inf); weight implicit
};

struct QuadratureRule {
    QuadKind kind;
    std::vector<double> nodes;   // strictly increasing, inside the interval
    std::vector<double> weights; // all > 0
};

/// Build an N-node rule.  Exact for polynomials of degree <= 2N-1.
/// Gauss-Legendre nodes by Newton iteration on Legendre polynomials;
/// Gauss-Laguerre by Newton on the Laguerre recurrence for N <= 60 and
/// by Golub-Welsch on the Jacobi matrix above that.  Rules are cached.
const QuadratureRule& make_rule(QuadKind kind, int n);

/// Sum of w_i * f(x_i).  For Laguerre this approximates the integral of
/// f(s) e^{-s}; the caller supplies f without the weight.
double integrate(const QuadratureRule& rule, const std::function<double(double)>& f);

} // namespace dbar

#endif
