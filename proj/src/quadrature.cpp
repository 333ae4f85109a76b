#include "dbar/quadrature.hpp"

#include "dbar/linalg.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace dbar {

namespace {

// Legendre P_n and derivative at x in [-1,1] by recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0)
        return {p0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

QuadratureRule gauss_legendre01(int n) {
    QuadratureRule rule{QuadKind::GaussLegendre01, {}, {}};
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    // roots come out descending in x, so fill from the back to keep the
    // mapped nodes on [0,1] ascending
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        const std::size_t slot = static_cast<std::size_t>(n - 1 - i);
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const auto [p, dp] = legendre(n, x);
        (void)p;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[slot] = 0.5 * (x + 1.0);
        rule.weights[slot] = 0.5 * w;
    }
    return rule;
}

// Laguerre L_n at x; returns (L_n, L_{n-1}).
std::pair<double, double> laguerre(int n, double x) {
    double p0 = 1.0, p1 = 1.0 - x;
    if (n == 0)
        return {p0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0 - x) * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    return {p1, p0};
}

double laguerre_weight(int n, double x) {
    // w_i = x / ((n+1)^2 L_{n+1}(x)^2)
    const auto [lnp1, ln] = laguerre(n + 1, x);
    (void)ln;
    const double d = (n + 1.0) * lnp1;
    return x / (d * d);
}

QuadratureRule gauss_laguerre_newton(int n) {
    QuadratureRule rule{QuadKind::GaussLaguerre, {}, {}};
    rule.nodes.resize(static_cast<std::size_t>(n));
    rule.weights.resize(static_cast<std::size_t>(n));
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        if (i == 0) {
            z = 3.0 / (1.0 + 2.4 * n);
        } else if (i == 1) {
            z += 15.0 / (1.0 + 2.5 * n);
        } else {
            const double ai = i - 1;
            z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[static_cast<std::size_t>(i - 2)]);
        }
        for (int it = 0; it < 200; ++it) {
            const auto [p, pm1] = laguerre(n, z);
            const double dp = n * (p - pm1) / z; // x L_n' = n (L_n - L_{n-1})
            const double dz = p / dp;
            z -= dz;
            if (std::abs(dz) < 1e-15 * (1.0 + z))
                break;
        }
        rule.nodes[static_cast<std::size_t>(i)] = z;
        rule.weights[static_cast<std::size_t>(i)] = laguerre_weight(n, z);
    }
    return rule;
}

QuadratureRule gauss_laguerre_golub_welsch(int n) {
    // Jacobi matrix: diag 2i+1, off-diag i.
    SymmetricMatrix j(n);
    for (int i = 0; i < n; ++i) {
        j.set(i, i, 2.0 * i + 1.0);
        if (i + 1 < n)
            j.set(i, i + 1, static_cast<double>(i + 1));
    }
    const EighResult e = eigh(j);
    QuadratureRule rule{QuadKind::GaussLaguerre, {}, {}};
    rule.nodes = e.values;
    rule.weights.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double v0 = e.vectors[static_cast<std::size_t>(i)]; // first row, column i
        rule.weights[static_cast<std::size_t>(i)] = v0 * v0;      // beta_0 = 1
    }
    return rule;
}

} // namespace

const QuadratureRule& make_rule(QuadKind kind, int n) {
    if (n < 1)
        throw std::domain_error("make_rule: node count must be >= 1");
    static std::map<std::pair<QuadKind, int>, QuadratureRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find({kind, n});
    if (it != cache.end())
        return it->second;
    QuadratureRule rule = (kind == QuadKind::GaussLegendre01)
                              ? gauss_legendre01(n)
                              : (n <= 60 ? gauss_laguerre_newton(n) : gauss_laguerre_golub_welsch(n));
    return cache.emplace(std::make_pair(kind, n), std::move(rule)).first->second;
}

double integrate(const QuadratureRule& rule, const std::function<double(double)>& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        s += rule.weights[i] * f(rule.nodes[i]);
    return s;
}

} // namespace dbar
