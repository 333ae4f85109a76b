#include "dbar/geometry.hpp"

#include "dbar/norms.hpp"
#include "dbar/quadrature.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dbar {

namespace {

// --- tiny expression grammar: r, numbers, + - * / ^, log, exp, parens ---

struct ExprParser {
    const std::string& s;
    std::size_t pos = 0;
    double r;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& what) {
        throw std::domain_error("profile expression: " + what + " at position " +
                                std::to_string(pos) + " in \"" + s + "\"");
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+'))
                v += term();
            else if (eat('-'))
                v -= term();
            else
                return v;
        }
    }
    double term() {
        double v = power();
        for (;;) {
            if (eat('*'))
                v *= power();
            else if (eat('/'))
                v /= power();
            else
                return v;
        }
    }
    double power() {
        const double base = unary();
        if (eat('^'))
            return std::pow(base, power()); // right-associative
        return base;
    }
    double unary() {
        if (eat('-'))
            return -unary();
        return primary();
    }
    double primary() {
        skip();
        if (pos >= s.size())
            fail("unexpected end");
        if (eat('(')) {
            const double v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return v;
        }
        const char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t used = 0;
            const double v = std::stod(s.substr(pos), &used);
            pos += used;
            return v;
        }
        if (s.compare(pos, 3, "log") == 0) {
            pos += 3;
            if (!eat('('))
                fail("log needs '('");
            const double v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return std::log(v);
        }
        if (s.compare(pos, 3, "exp") == 0) {
            pos += 3;
            if (!eat('('))
                fail("exp needs '('");
            const double v = expr();
            if (!eat(')'))
                fail("missing ')'");
            return std::exp(v);
        }
        if (c == 'r') {
            ++pos;
            return r;
        }
        fail("unexpected character");
    }
};

double eval_expr(const std::string& expr, double r) {
    ExprParser p{expr, 0, r};
    const double v = p.expr();
    p.skip();
    if (p.pos != expr.size())
        p.fail("trailing input");
    return v;
}

constexpr int kGridPoints = 1000;

} // namespace

double evaluate_expression(const std::string& expr, double r) {
    return eval_expr(expr, r);
}

std::vector<double> radial_grid(double sup_radius) {
    const double rmax =
        std::isfinite(sup_radius) ? sup_radius * (1.0 - 1e-6) : 50.0;
    std::vector<double> grid(kGridPoints);
    for (int i = 0; i < kGridPoints; ++i)
        grid[static_cast<std::size_t>(i)] =
            0.5 * rmax * (1.0 - std::cos(M_PI * i / (kGridPoints - 1)));
    return grid;
}

RadialProfile builtin_profile(const ModelSpec& model) {
    const double a = model.alpha;
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        return RadialProfile{RadialProfile::Kind::KahlerPotential,
                             [](double r) { return r; }, [](double) { return 1.0; },
                             [](double) { return 0.0; },
                             [](double r) { return r; }, [](double) { return 1.0; },
                             [](double) { return 0.0; },
                             std::numeric_limits<double>::infinity()};
    case ModelKind::HyperbolicExponential:
        return RadialProfile{RadialProfile::Kind::KahlerPotential,
                             [](double r) { return -std::log(1.0 - r); },
                             [](double r) { return 1.0 / (1.0 - r); },
                             [](double r) { return 1.0 / ((1.0 - r) * (1.0 - r)); },
                             [a](double r) { return a / (1.0 - r); },
                             [a](double r) { return a / ((1.0 - r) * (1.0 - r)); },
                             [a](double r) { return 2.0 * a / std::pow(1.0 - r, 3); },
                             1.0};
    case ModelKind::ConformalStandard:
        // metric e^{phi} delta with phi = -log(1-r); alpha = 1 - n - gamma
        return RadialProfile{RadialProfile::Kind::ConformalFactor,
                             [](double r) { return -std::log(1.0 - r); },
                             [](double r) { return 1.0 / (1.0 - r); },
                             [](double r) { return 1.0 / ((1.0 - r) * (1.0 - r)); },
                             [a](double r) { return a * std::log(1.0 - r); },
                             [a](double r) { return -a / (1.0 - r); },
                             [a](double r) { return -a / ((1.0 - r) * (1.0 - r)); },
                             1.0};
    case ModelKind::Cigar:
        return RadialProfile{RadialProfile::Kind::ConformalFactor,
                             [](double r) { return -std::log(1.0 + r); },
                             [](double r) { return -1.0 / (1.0 + r); },
                             [](double r) { return 1.0 / ((1.0 + r) * (1.0 + r)); },
                             [a](double r) { return a * std::log(1.0 + r); },
                             [a](double r) { return a / (1.0 + r); },
                             [a](double r) { return -a / ((1.0 + r) * (1.0 + r)); },
                             std::numeric_limits<double>::infinity()};
    }
    throw std::logic_error("builtin_profile: unreachable");
}

RadialProfile profile_from_expressions(RadialProfile::Kind kind, const std::string& f_expr,
                                       const std::string& psi_expr, double sup_radius) {
    auto value = [](std::string e) {
        return [e = std::move(e)](double r) { return eval_expr(e, r); };
    };
    auto d1 = [](std::string e) {
        return [e = std::move(e)](double r) {
            const double h = 1e-5 * (1.0 + r);
            return (eval_expr(e, r - 2 * h) - 8 * eval_expr(e, r - h) +
                    8 * eval_expr(e, r + h) - eval_expr(e, r + 2 * h)) /
                   (12 * h);
        };
    };
    auto d2 = [](std::string e) {
        return [e = std::move(e)](double r) {
            const double h = 1e-5 * (1.0 + r);
            return (-eval_expr(e, r - 2 * h) + 16 * eval_expr(e, r - h) -
                    30 * eval_expr(e, r) + 16 * eval_expr(e, r + h) -
                    eval_expr(e, r + 2 * h)) /
                   (12 * h * h);
        };
    };
    eval_expr(f_expr, 0.25);   // validate the grammar up front
    eval_expr(psi_expr, 0.25);
    return RadialProfile{kind,
                         value(f_expr), d1(f_expr), d2(f_expr),
                         value(psi_expr), d1(psi_expr), d2(psi_expr),
                         sup_radius};
}

namespace {

GeometryReport constancy_report(std::vector<double> grid, std::vector<double> c) {
    GeometryReport report;
    report.grid = std::move(grid);
    report.coefficient = std::move(c);
    double mean = 0.0;
    for (double v : report.coefficient)
        mean += v;
    mean /= static_cast<double>(report.coefficient.size());
    double defect = 0.0;
    for (double v : report.coefficient)
        defect = std::max(defect, std::abs(v - mean));
    report.holomorphicity_constant = mean;
    report.constancy_defect = defect;
    report.has_constant = defect < 1e-8;
    return report;
}

} // namespace

GeometryReport check_kahler_duality(const RadialProfile& profile) {
    if (profile.kind != RadialProfile::Kind::KahlerPotential)
        throw std::domain_error("check_kahler_duality: Kahler-potential profile required");
    std::vector<double> grid = radial_grid(profile.sup_radius);
    std::vector<double> c(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        const double hp = profile.fp(r);
        const double den = hp + r * profile.fpp(r);
        if (!(hp > 0.0) || !(den > 0.0))
            throw std::domain_error("check_kahler_duality: metric positivity fails at r = " +
                                    std::to_string(r));
        c[i] = profile.psip(r) / den;
    }
    return constancy_report(std::move(grid), std::move(c));
}

GeometryReport check_conformal_duality(const RadialProfile& profile, int n) {
    if (profile.kind != RadialProfile::Kind::ConformalFactor)
        throw std::domain_error("check_conformal_duality: conformal-factor profile required");
    if (n < 1)
        throw std::domain_error("check_conformal_duality: n must be >= 1");
    std::vector<double> grid = radial_grid(profile.sup_radius);
    std::vector<double> c(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = grid[i];
        c[i] = std::exp(-profile.f(r)) * (profile.psip(r) - (n - 1) * profile.fp(r));
    }
    return constancy_report(std::move(grid), std::move(c));
}

GeometryReport torsion_profile(const RadialProfile& profile, int n) {
    if (n < 1)
        throw std::domain_error("torsion_profile: n must be >= 1");
    GeometryReport report;
    report.grid = radial_grid(profile.sup_radius);
    report.torsion_coefficient.resize(report.grid.size(), 0.0);
    report.torsion_norm.resize(report.grid.size(), 0.0);
    // tau = (n-1) phi' zbar_j dz^j; vanishes for n = 1 and for the
    // potential-induced (Kahler) metrics
    if (n == 1 || profile.kind == RadialProfile::Kind::KahlerPotential)
        return report;
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        const double r = report.grid[i];
        const double coeff = (n - 1) * profile.fp(r);
        report.torsion_coefficient[i] = coeff;
        report.torsion_norm[i] = coeff * coeff * r * std::exp(-profile.f(r));
    }
    return report;
}

namespace {

GeometryReport min_eig_report(std::vector<double> grid,
                              const std::function<double(double)>& min_eig) {
    GeometryReport report;
    report.grid = std::move(grid);
    report.min_eigenvalue.resize(report.grid.size());
    double overall = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < report.grid.size(); ++i) {
        report.min_eigenvalue[i] = min_eig(report.grid[i]);
        overall = std::min(overall, report.min_eigenvalue[i]);
    }
    report.min_eigenvalue_overall = overall;
    return report;
}

// 5-point first/second derivative of a callable (used where the profile
// supplies no third derivative, i.e. the log-det term of Kahler profiles)
double fd1(const std::function<double(double)>& f, double r, double h) {
    return (f(r - 2 * h) - 8 * f(r - h) + 8 * f(r + h) - f(r + 2 * h)) / (12 * h);
}
double fd2(const std::function<double(double)>& f, double r, double h) {
    return (-f(r - 2 * h) + 16 * f(r - h) - 30 * f(r) + 16 * f(r + h) - f(r + 2 * h)) /
           (12 * h * h);
}

} // namespace

GeometryReport curvature_condition(const RadialProfile& profile, int n, double epsilon,
                                   double sigma) {
    if (n < 1)
        throw std::domain_error("curvature_condition: n must be >= 1");
    const double s = sigma > 1.0 ? sigma / (sigma - 1.0) : 0.0;
    std::vector<double> grid = radial_grid(profile.sup_radius);

    if (profile.kind == RadialProfile::Kind::ConformalFactor) {
        // tested form = [psi' - n phi' - 2 s (phi')^2 t - eps e^phi] I
        //             + [psi'' - n phi'' + 2 s (phi')^2] zbar z^T
        return min_eig_report(std::move(grid), [&, n, epsilon, s](double t) {
            const double fp = profile.fp(t);
            const double tang =
                profile.psip(t) - n * fp - 2.0 * s * fp * fp * t - epsilon * std::exp(profile.f(t));
            const double rad =
                tang + t * (profile.psipp(t) - n * profile.fpp(t) + 2.0 * s * fp * fp);
            return n >= 2 ? std::min(tang, rad) : rad;
        });
    }

    // Kahler potential: torsion vanishes; Theta from the log-determinant
    // D = (n-1) log h' + log(h' + t h'') differentiated numerically
    auto logdet = [&, n](double t) {
        return (n - 1) * std::log(profile.fp(t)) + std::log(profile.fp(t) + t * profile.fpp(t));
    };
    return min_eig_report(std::move(grid), [&, n, epsilon](double t) {
        double h = 1e-5 * (1.0 + t);
        if (std::isfinite(profile.sup_radius))
            h = std::min(h, std::max(0.25 * (profile.sup_radius - t), 1e-7));
        if (t < 2.0 * h)
            h = std::max(0.5 * t, 1e-7); // keep the stencil inside [0, R)
        const double dp = fd1(logdet, t, h);
        const double dpp = fd2(logdet, t, h);
        const double tang = profile.psip(t) - dp - epsilon * profile.fp(t);
        const double rad = tang + t * (profile.psipp(t) - dpp - epsilon * profile.fpp(t));
        return n >= 2 ? std::min(tang, rad) : rad;
    });
}

GeometryReport curvature_condition(const ModelSpec& model, double epsilon, double sigma) {
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        // i ddbar |z|^2 = omega identically
        return min_eig_report(radial_grid(std::numeric_limits<double>::infinity()),
                              [epsilon](double) { return 1.0 - epsilon; });
    case ModelKind::HyperbolicExponential: {
        // A I + B zbar z^T with gt = n + 1 + epsilon
        const double a = model.alpha;
        const double gt = model.n + 1.0 + epsilon;
        const int n = model.n;
        return min_eig_report(radial_grid(1.0), [a, gt, n](double t) {
            const double omt = 1.0 - t;
            const double tang = (a - gt * omt) / (omt * omt);
            const double rad = tang + t * (2.0 * a - gt * omt) / (omt * omt * omt);
            return n >= 2 ? std::min(tang, rad) : rad;
        });
    }
    case ModelKind::ConformalStandard:
    case ModelKind::Cigar:
        return curvature_condition(builtin_profile(model), model.n, epsilon, sigma);
    }
    throw std::logic_error("curvature_condition: unreachable");
}

double curvature_threshold(const ModelSpec& model, double lo, double hi) {
    auto holds = [&](double eps) {
        return curvature_condition(model, eps).min_eigenvalue_overall >= -1e-10;
    };
    if (!holds(lo))
        throw std::domain_error("curvature_threshold: condition fails already at the lower bound");
    if (holds(hi))
        return hi;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        (holds(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace {

// int f(t) W(t) dt over the model domain, where W is the model's
// essential exponential factor (e^{-t} flat, e^{-alpha/(1-t)} hyperbolic,
// 1 otherwise) and f the rest of the integrand.  Splitting W out lets the
// substituted Gauss-Laguerre rules absorb it without overflow.
double model_radial_integral(const ModelSpec& model, int nodes,
                             const std::function<double(double)>& f) {
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        return escalated_integral(QuadKind::GaussLaguerre, nodes, f);
    case ModelKind::HyperbolicExponential: {
        const double a = model.alpha;
        // 1 - t = a/(s+a) maps the boundary singularity to the half-line
        return escalated_integral(QuadKind::GaussLaguerre, nodes, [&, a](double s) {
            const double t = s / (s + a);
            return f(t) * std::exp(-a) * a / ((s + a) * (s + a));
        });
    }
    case ModelKind::Cigar:
        return escalated_integral(QuadKind::GaussLegendre01, nodes, [&](double u) {
            const double t = u / (1.0 - u);
            return f(t) / ((1.0 - u) * (1.0 - u));
        });
    case ModelKind::ConformalStandard:
        return escalated_integral(QuadKind::GaussLegendre01, nodes, f);
    }
    throw std::logic_error("model_radial_integral: unreachable");
}

} // namespace

BasicIdentityReport basic_identity_diagnostic(const ModelSpec& model,
                                              const FormCoefficients& u, int nodes) {
    if (u.degree_p() != 1)
        throw std::domain_error("basic_identity_diagnostic: expects a (1,0)-form");
    const bool feasible =
        model.kind == ModelKind::SegalBargmann || model.kind == ModelKind::Cigar ||
        (model.kind == ModelKind::HyperbolicExponential && model.n == 1);
    if (!feasible)
        throw std::domain_error(
            "basic_identity_diagnostic: supported for the flat, cigar and n=1 exponential models");

    BasicIdentityReport report;
    if (u.empty())
        return report;

    // T u = 0 in every feasible case (n = 1 or Kahler-flat)
    if (model.n >= 2) {
        const FormCoefficients du = dbar(u);
        report.dbar_term = du.empty() ? 0.0 : inner_product(du, du, nodes).real();
    }
    const FormCoefficients au = dbar_adjoint(u);
    report.adjoint_term = au.empty() ? 0.0 : inner_product(au, au, nodes).real();

    const double a = model.alpha;
    switch (model.kind) {
    case ModelKind::SegalBargmann: {
        // i ddbar psi + Theta = omega: the pairing is ||u||^2
        report.curvature_term = inner_product(u, u, nodes).real();
        // flat Chern connection: plain derivatives
        for (int j = 0; j < model.n; ++j) {
            FormCoefficients dju(model, 1);
            for (const auto& [key, c] : u.table())
                if (key.J[j] > 0)
                    dju.add_one_form(key.J.decremented(j), key.a,
                                     static_cast<double>(key.J[j]) * c);
            if (!dju.empty())
                report.gradient_norm += inner_product(dju, dju, nodes).real();
        }
        break;
    }
    case ModelKind::Cigar: {
        // pairing = (alpha+1) int |u|^2 (1+t)^{-(alpha+1)} dlambda
        FormCoefficients scalar(model, 0);
        for (const auto& [key, c] : u.table())
            scalar.add_scalar(key.J, c);
        report.curvature_term =
            (a + 1.0) * inner_product(scalar, scalar, nodes).real();
        // g = (1+t)^{-1}, g'/g = -1/(1+t); tensor weight g^{-2}
        for (const auto& [key, c] : u.table()) {
            const int k = key.J[0];
            const double c2 = std::norm(c);
            report.gradient_norm +=
                c2 * M_PI *
                model_radial_integral(model, nodes, [k, a](double t) {
                    const double grad =
                        (k > 0 ? k * k * std::pow(t, k - 1) : 0.0) +
                        2.0 * k * std::pow(t, k) / (1.0 + t) +
                        std::pow(t, k + 1) / ((1.0 + t) * (1.0 + t));
                    return grad * std::pow(1.0 + t, 1.0 - a);
                });
        }
        break;
    }
    case ModelKind::HyperbolicExponential: {
        // pairing integrand [alpha(1-t^2) - 2(1-t)^2] (1-t)^{-2} e^{-a/(1-t)}
        for (const auto& [key, c] : u.table()) {
            const int k = key.J[0];
            const double c2 = std::norm(c);
            report.curvature_term +=
                c2 * M_PI *
                model_radial_integral(model, nodes, [k, a](double t) {
                    const double omt = 1.0 - t;
                    return std::pow(t, k) * (a * (1.0 + t) / omt - 2.0);
                });
            // g = (1-t)^{-2}, g'/g = 2/(1-t); weight g^{-2} e^{-psi} g
            report.gradient_norm +=
                c2 * M_PI *
                model_radial_integral(model, nodes, [k, a](double t) {
                    const double omt = 1.0 - t;
                    const double grad =
                        (k > 0 ? k * k * std::pow(t, k - 1) : 0.0) -
                        4.0 * k * std::pow(t, k) / omt +
                        4.0 * std::pow(t, k + 1) / (omt * omt);
                    return grad * omt * omt;
                });
        }
        break;
    }
    default:
        break;
    }

    report.gradient_term = report.dbar_term + report.adjoint_term - report.curvature_term;
    report.ratio =
        report.gradient_norm > 1e-300 ? report.gradient_term / report.gradient_norm : 0.0;
    return report;
}

} // namespace dbar
