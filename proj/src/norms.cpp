#include "dbar/norms.hpp"

#include "dbar/errors.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace dbar {

double log_angular_factor(const MultiIndex& j) {
    const int n = j.dim();
    return n * std::log(M_PI) + j.log_factorial() - ln_factorial(n - 1 + j.order());
}

namespace {

/// Run eval at n0, 2 n0, ... until successive values agree to relative
/// 1e-8 (or 1e-6 once 200 nodes are reached; beyond that, give up).
double escalated(int n0, const std::function<double(int)>& eval) {
    if (n0 < 10)
        throw std::domain_error("radial quadrature: node count must be >= 10");
    double prev = eval(n0);
    for (int n = 2 * n0;; n *= 2) {
        const double cur = eval(n);
        const double rel = std::abs(cur - prev) / std::max(std::abs(cur), 1e-300);
        if (rel <= 1e-8)
            return cur;
        if (n >= 200) {
            if (rel <= 1e-6)
                return cur;
            throw accuracy_error("radial quadrature did not stabilize at 200 nodes");
        }
        prev = cur;
    }
}

double legendre_integral(int n, const std::function<double(double)>& f) {
    return integrate(make_rule(QuadKind::GaussLegendre01, n), f);
}

double laguerre_integral(int n, const std::function<double(double)>& f) {
    return integrate(make_rule(QuadKind::GaussLaguerre, n), f);
}

} // namespace

double escalated_integral(QuadKind kind, int n0, const std::function<double(double)>& f) {
    return escalated(n0, [&](int n) { return integrate(make_rule(kind, n), f); });
}

double hyp_radial(const ModelSpec& model, int m, double q, int nodes) {
    if (model.kind != ModelKind::HyperbolicExponential)
        throw std::domain_error("hyp_radial: exponential-weight model required");
    const double a = model.alpha;
    const int n = model.n;

    // memoized: the Gram/block machinery requests the same few moments often
    using Key = std::tuple<double, int, int, double, int>;
    static std::map<Key, double> cache;
    static std::mutex mtx;
    const Key key{a, n, m, q, nodes};
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end())
            return it->second;
    }

    // prefactor alpha^{q+1} e^{-alpha}; Laguerre supplies the e^{-s}
    const double logpre = (q + 1.0) * std::log(a) - a;
    const double power = m + n + q + 1.0;
    const double value = escalated(nodes, [&](int nn) {
        return laguerre_integral(nn, [&](double s) {
            return std::exp(logpre + (m + n - 1) * std::log(s) - power * std::log(s + a));
        });
    });
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, value);
    return value;
}

double radial_moment(const ModelSpec& model, int m, int p, int nodes) {
    if (m < 0)
        throw std::domain_error("radial_moment: m must be >= 0");
    if (p < 0 || p > 2)
        throw std::domain_error("radial_moment: p must be 0, 1 or 2");
    const int n = model.n;
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        // int t^{m+n-1} e^{-t} dt = Gamma(m+n); the rule is exact once
        // 2N-1 >= m+n-1, so escalation stops immediately
        return escalated(nodes, [&](int nn) {
            return laguerre_integral(nn, [&](double t) { return std::pow(t, m + n - 1); });
        });
    case ModelKind::ConformalStandard: {
        // int_0^1 t^{m+n-1} (1-t)^{gamma-1+p} dt; substituting 1-t = u^2
        // turns half-integer gamma into a polynomial integrand
        const double e = 2.0 * (model.gamma + p) - 1.0;
        return escalated(nodes, [&](int nn) {
            return legendre_integral(nn, [&](double u) {
                return 2.0 * std::pow(1.0 - u * u, m + n - 1) * std::pow(u, e);
            });
        });
    }
    case ModelKind::Cigar: {
        // int_0^inf t^m (1+t)^{p-alpha-1} dt; t = u/(1-u) gives
        // int_0^1 u^m (1-u)^{alpha-1-p-m} du, divergent once the exponent
        // reaches -1 (square-integrability cutoff |J| < alpha - p)
        const double e = model.alpha - 1.0 - p - m;
        if (e <= -1.0)
            throw std::domain_error("radial_moment: cigar moment diverges (degree must stay below alpha - p)");
        // 1-u = v^2 again removes the half-integer boundary singularity
        return escalated(nodes, [&](int nn) {
            return legendre_integral(nn, [&](double v) {
                return 2.0 * std::pow(1.0 - v * v, m) * std::pow(v, 2.0 * e + 1.0);
            });
        });
    }
    case ModelKind::HyperbolicExponential:
        return hyp_radial(model, m, static_cast<double>(p) - n - 1.0, nodes);
    }
    throw std::logic_error("radial_moment: unreachable");
}

namespace {

double log_norm_closed_form(const ModelSpec& model, int p, const MultiIndex& j) {
    if (j.dim() != model.n)
        throw std::domain_error("norm_closed_form: multi-index dimension mismatch");
    if (p < 0 || p > 2)
        throw std::domain_error("norm_closed_form: p must be 0, 1 or 2");
    const int n = model.n;
    const int m = j.order();
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        return n * std::log(M_PI) + j.log_factorial();
    case ModelKind::ConformalStandard: {
        const double g = model.gamma + p;
        return n * std::log(M_PI) + j.log_factorial() + ln_gamma(g) - ln_gamma(m + n + g);
    }
    case ModelKind::Cigar: {
        if (p == 2)
            throw std::domain_error("norm_closed_form: cigar model has no (2,0)-forms");
        if (!(model.alpha - p - m > 0.0))
            throw std::domain_error("norm_closed_form: cigar norm diverges (degree must stay below alpha - p)");
        return std::log(M_PI) + ln_factorial(m) + ln_gamma(model.alpha - p - m) -
               ln_gamma(model.alpha + 1.0 - p);
    }
    case ModelKind::HyperbolicExponential:
        throw std::domain_error("norm_closed_form: exponential weight has no elementary closed form; use norm_quadrature");
    }
    throw std::logic_error("norm_closed_form: unreachable");
}

void validate_key(const ModelSpec& model, int p, const FormKey& key) {
    if (key.J.dim() != model.n)
        throw std::domain_error("pair_monomials: multi-index dimension mismatch");
    switch (p) {
    case 0:
        if (key.a != -1 || key.b != -1)
            throw std::domain_error("pair_monomials: scalar key carries component indices");
        return;
    case 1:
        if (key.a < 0 || key.a >= model.n || key.b != -1)
            throw std::domain_error("pair_monomials: one-form component out of range");
        return;
    case 2:
        if (!(0 <= key.a && key.a < key.b && key.b < model.n))
            throw std::domain_error("pair_monomials: two-form components must satisfy 0 <= a < b < n");
        return;
    default:
        throw std::domain_error("pair_monomials: p must be 0, 1 or 2");
    }
}

} // namespace

double norm_closed_form(const ModelSpec& model, int p, const MultiIndex& j) {
    return std::exp(log_norm_closed_form(model, p, j));
}

double pair_monomials(const ModelSpec& model, int p, const FormKey& x, const FormKey& y,
                      int nodes) {
    validate_key(model, p, x);
    validate_key(model, p, y);
    const int m = x.J.order();

    if (model.kind != ModelKind::HyperbolicExponential) {
        // conformal-type metric: monomials are mutually orthogonal
        if (!(x == y))
            return 0.0;
        return std::exp(log_angular_factor(x.J)) * radial_moment(model, m, p, nodes);
    }

    const int n = model.n;
    auto hyp = [&](int mm, double q) { return hyp_radial(model, mm, q, nodes); };
    auto ang = [&](const MultiIndex& j) { return std::exp(log_angular_factor(j)); };

    if (p == 0)
        return x.J == y.J ? ang(x.J) * hyp(m, -n - 1.0) : 0.0;

    if (p == 1) {
        // h^{jk} = (1-t)(delta_{jk} - z^j conj(z^k)) couples (J,j), (K,k)
        // only when J + e_j = K + e_k
        double r = 0.0;
        if (x.a == y.a && x.J == y.J)
            r += ang(x.J) * hyp(m, -static_cast<double>(n));
        if (x.J.incremented(x.a) == y.J.incremented(y.a))
            r -= ang(x.J.incremented(x.a)) * hyp(m + 1, -static_cast<double>(n));
        return r;
    }

    // p == 2: expand h^{ac}h^{bd} - h^{ad}h^{bc}; the quartic terms cancel
    const int a = x.a, b = x.b, c = y.a, d = y.b;
    const double q = 1.0 - n;
    double r = 0.0;
    if (a == c && b == d && x.J == y.J)
        r += ang(x.J) * hyp(m, q);
    if (a == c && x.J.incremented(b) == y.J.incremented(d))
        r -= ang(x.J.incremented(b)) * hyp(m + 1, q);
    if (b == d && x.J.incremented(a) == y.J.incremented(c))
        r -= ang(x.J.incremented(a)) * hyp(m + 1, q);
    if (a == d && x.J.incremented(b) == y.J.incremented(c))
        r += ang(x.J.incremented(b)) * hyp(m + 1, q);
    if (b == c && x.J.incremented(a) == y.J.incremented(d))
        r += ang(x.J.incremented(a)) * hyp(m + 1, q);
    return r;
}

double norm_quadrature(const ModelSpec& model, int p, const MultiIndex& j, int a, int nodes,
                       int b) {
    const FormKey key{j, p == 0 ? -1 : a, b};
    const double v = pair_monomials(model, p, key, key, nodes);
    if (!(v > 0.0) || !std::isfinite(v))
        throw accuracy_error("norm_quadrature: non-positive squared norm");
    return v;
}

std::complex<double> inner_product(const FormCoefficients& u, const FormCoefficients& v,
                                   int nodes) {
    if (u.degree_p() != v.degree_p() || u.model().kind != v.model().kind ||
        u.model().n != v.model().n)
        throw std::domain_error("inner_product: mismatched forms");
    std::complex<double> s(0.0, 0.0);
    for (const auto& [kx, cx] : u.table())
        for (const auto& [ky, cy] : v.table()) {
            const double g = pair_monomials(u.model(), u.degree_p(), kx, ky, nodes);
            if (g != 0.0)
                s += cx * std::conj(cy) * g;
        }
    return s;
}

double verify_duality_identity(const ModelSpec& model, const MultiIndex& j, int k) {
    if (k < 0 || k >= model.n)
        throw std::domain_error("verify_duality_identity: component out of range");
    const double c = duality_constant(model);
    const double jk1 = j[k] + 1.0;

    if (model.kind != ModelKind::HyperbolicExponential) {
        // diagonal metric: the pairing collapses to
        // c * c^2_{J+_k 1} = (j_k + 1) * d_J^2, evaluated in closed form
        const double lc = log_norm_closed_form(model, 0, j.incremented(k));
        const double ld = log_norm_closed_form(model, 1, j);
        return std::abs(c * std::exp(lc) - jk1 * std::exp(ld)) / std::exp(ld);
    }

    // non-conformal metric: test the adjointness pairing
    // <dbar z^{J+_k 1}, z^J dz^k> = <z^{J+_k 1}, adjoint(z^J dz^k)> = c ||z^{J+_k 1}||^2
    const MultiIndex ji = j.incremented(k);
    double lhs = 0.0;
    for (int r = 0; r < model.n; ++r)
        if (ji[r] > 0)
            lhs += ji[r] * pair_monomials(model, 1, FormKey{ji.decremented(r), r, -1},
                                          FormKey{j, k, -1});
    const double rhs = c * pair_monomials(model, 0, FormKey{ji, -1, -1}, FormKey{ji, -1, -1});
    const double den = pair_monomials(model, 1, FormKey{j, k, -1}, FormKey{j, k, -1});
    return std::abs(lhs - rhs) / den;
}

std::vector<FormKey> block_basis(const ModelSpec& model, int m, int p) {
    if (p < 0 || p > 2)
        throw std::domain_error("block_basis: p must be 0, 1 or 2");
    if (p == 2 && model.n < 2)
        throw std::domain_error("block_basis: (2,0)-forms need n >= 2");
    std::vector<FormKey> basis;
    for (const MultiIndex& j : enumerate_multiindices(model.n, m)) {
        if (p == 0) {
            basis.push_back(FormKey{j, -1, -1});
        } else if (p == 1) {
            for (int k = 0; k < model.n; ++k)
                basis.push_back(FormKey{j, k, -1});
        } else {
            for (int a = 0; a < model.n; ++a)
                for (int b = a + 1; b < model.n; ++b)
                    basis.push_back(FormKey{j, a, b});
        }
    }
    return basis;
}

SymmetricMatrix gram_block(const ModelSpec& model, int m, int p, int nodes) {
    const std::vector<FormKey> basis = block_basis(model, m, p);
    const int order = static_cast<int>(basis.size());
    SymmetricMatrix g(order);
    for (int i = 0; i < order; ++i)
        for (int j = i; j < order; ++j)
            g.set(i, j, pair_monomials(model, p, basis[static_cast<std::size_t>(i)],
                                       basis[static_cast<std::size_t>(j)], nodes));
    return g;
}

NormTable::NormTable(ModelSpec model, int p, int max_order, int nodes)
    : model_(model), p_(p), max_order_(max_order) {
    if (max_order < 0 || max_order > 64)
        throw std::domain_error("NormTable: max order must lie in [0, 64]");
    const bool closed = model.kind != ModelKind::HyperbolicExponential;
    method_ = closed ? Method::ClosedForm : Method::Quadrature;
    for (int m = 0; m <= max_order; ++m)
        for (const FormKey& key : block_basis(model, m, p)) {
            double lv;
            if (closed && model.kind != ModelKind::Cigar) {
                lv = log_norm_closed_form(model, p, key.J);
            } else if (model.kind == ModelKind::Cigar) {
                if (!(model.alpha - p - m > 0.0))
                    continue; // non-square-integrable tail of the cigar basis
                lv = log_norm_closed_form(model, p, key.J);
            } else {
                lv = std::log(norm_quadrature(model, p, key.J, key.a, nodes, key.b));
            }
            log_norms_.emplace(key, lv);
        }
}

double NormTable::log_squared_norm(const FormKey& key) const {
    auto it = log_norms_.find(key);
    if (it == log_norms_.end())
        throw std::domain_error("NormTable: entry not tabulated");
    return it->second;
}

double NormTable::squared_norm(const FormKey& key) const {
    return std::exp(log_squared_norm(key));
}

} // namespace dbar
