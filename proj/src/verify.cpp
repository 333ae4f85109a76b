#include "dbar/verify.hpp"

#include "dbar/block.hpp"
#include "dbar/geometry.hpp"
#include "dbar/norms.hpp"
#include "dbar/spectral.hpp"
#include "dbar/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>

namespace dbar {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

CheckResult pass_fail(std::string name, bool ok, std::string detail) {
    return CheckResult{std::move(name), ok, std::move(detail)};
}

// ---- 1. closed-form norm duality, standard weight --------------------------

CheckResult check_conformal_norm_duality() {
    const ModelSpec model = ModelSpec::standard(2, 1.5);
    double worst_residual = 0.0, worst_quad = 0.0;
    for (int m = 0; m <= 6; ++m)
        for (const MultiIndex& j : enumerate_multiindices(2, m)) {
            for (int k = 0; k < 2; ++k)
                worst_residual = std::max(worst_residual, verify_duality_identity(model, j, k));
            for (int p = 0; p <= 1; ++p) {
                const double cf = norm_closed_form(model, p, j);
                const double q = norm_quadrature(model, p, j, p == 0 ? -1 : 0, 40);
                worst_quad = std::max(worst_quad, std::abs(q - cf) / cf);
            }
        }
    const bool ok = worst_residual < 1e-12 && worst_quad < 1e-8;
    return pass_fail("conformal-norm-duality", ok,
                     "max residual " + fmt(worst_residual) + " (tol 1e-12), closed-vs-quadrature " +
                         fmt(worst_quad) + " (tol 1e-8)");
}

// ---- 2. quadrature norm duality, exponential weight ------------------------

CheckResult check_exponential_norm_duality() {
    double worst = 0.0;
    for (double alpha : {0.5, 1.0, 2.0}) {
        const ModelSpec model = ModelSpec::hyperbolic(1, alpha);
        for (int k = 0; k <= 20; ++k)
            worst = std::max(worst,
                             verify_duality_identity(model, MultiIndex(std::vector<int>{k}), 0));
    }
    return pass_fail("exponential-norm-duality", worst < 1e-8,
                     "max residual " + fmt(worst) + " over alpha in {0.5,1,2}, k <= 20 (tol 1e-8)");
}

// ---- 3. exponential-weight spectrum ---------------------------------------

CheckResult check_hyperbolic_spectrum(int workers) {
    const ModelSpec model = ModelSpec::hyperbolic(2, 1.0);
    const SpectralReport report = spectrum(model, 6, OperatorKind::Box1, workers);
    double worst = 0.0;
    bool mult_ok = true;
    for (const EigenCluster& c : report.eigenvalues) {
        const int k = c.block_m + 1; // eigenvalue alpha*k from block m = k-1
        worst = std::max(worst, std::abs(c.value - model.alpha * k));
        if (c.multiplicity != 2 * k)
            mult_ok = false;
    }
    const bool single = report.eigenvalues.size() == 7; // one cluster per block
    return pass_fail("hyperbolic-spectrum", worst < 1e-10 && mult_ok && single,
                     "max |lambda - alpha(m+1)| = " + fmt(worst) +
                         " (tol 1e-10), multiplicities 2k " + (mult_ok ? "ok" : "wrong"));
}

// ---- 4. standard-weight spectrum ------------------------------------------

CheckResult check_standard_spectrum(int workers) {
    // the displayed m=1 block for n=2, gamma=1
    const SpectralReport small = spectrum(ModelSpec::standard(2, 1.0), 1, OperatorKind::Box1, workers);
    std::vector<double> m1;
    for (const EigenCluster& c : small.eigenvalues)
        if (c.block_m == 1)
            for (int i = 0; i < c.multiplicity; ++i)
                m1.push_back(c.value);
    const std::vector<double> expect{2.0, 2.0, 2.0, 4.0};
    bool block_ok = m1.size() == 4;
    double worst_block = 0.0;
    if (block_ok)
        for (std::size_t i = 0; i < 4; ++i)
            worst_block = std::max(worst_block, std::abs(m1[i] - expect[i]));
    block_ok = block_ok && worst_block < 1e-10;

    // bottom/top of every block across dimensions
    double worst_min = 0.0;
    bool top_ok = true;
    const double g = 1.0;
    for (int n : {1, 2, 3}) {
        const ModelSpec model = ModelSpec::standard(n, g);
        for (int m = 0; m <= 6; ++m) {
            const EighResult e = eigh(assemble_block(model, m).matrix);
            worst_min = std::max(worst_min, std::abs(e.values.front() - (m + 1) * g));
            if (m >= 1 && !(e.values.back() < g + m * (2.0 + g)))
                top_ok = false;
        }
    }
    const bool ok = block_ok && worst_min < 1e-9 && top_ok;
    return pass_fail("standard-spectrum", ok,
                     "m=1 block vs {2,2,2,4}: " + fmt(worst_block) +
                         " (tol 1e-10); min-eigenvalue defect " + fmt(worst_min) +
                         " (tol 1e-9); upper bound " + (top_ok ? "ok" : "violated"));
}

// ---- shared solver protocol ------------------------------------------------

FormCoefficients random_polynomial(const ModelSpec& model, int p, int max_deg,
                                   std::mt19937& rng) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    FormCoefficients u(model, p);
    for (int m = 0; m <= max_deg; ++m)
        for (const FormKey& key : block_basis(model, m, p))
            u.add(key.J, key.a, key.b, std::complex<double>(dist(rng), dist(rng)));
    return u;
}

CheckResult check_sharp_solve(const std::string& name, const ModelSpec& model) {
    std::ostringstream detail;
    bool ok = true;

    // constant datum: the equality case of the sharp estimate
    FormCoefficients eta0(model, 1);
    for (int k = 0; k < model.n; ++k)
        eta0.add_one_form(MultiIndex::zeros(model.n), k, 1.0);
    const SolveReport equal = solve_dbar(model, eta0);
    const double eq_defect = std::abs(equal.norm_ratio - 1.0);
    ok = ok && eq_defect < 1e-10;
    detail << "equality defect " << fmt(eq_defect) << " (tol 1e-10)";

    // random closed data eta = dbar(g), degree <= 5
    std::mt19937 rng(20260824);
    double worst_resid = 0.0, worst_orth = 0.0, worst_ratio = 0.0;
    bool strict = true;
    for (int trial = 0; trial < 5; ++trial) {
        const FormCoefficients g = random_polynomial(model, 0, 6, rng);
        const FormCoefficients eta = dbar(g);
        const SolveReport r = solve_dbar(model, eta);
        worst_resid = std::max(worst_resid,
                               r.residual_dbar / (1.0 + eta.max_abs_coefficient()));
        worst_orth = std::max(worst_orth, r.orthogonality_defect);
        worst_ratio = std::max(worst_ratio, r.norm_ratio);
        if (!(r.norm_ratio < 1.0))
            strict = false; // non-constant datum must fall below the sharp bound
    }
    ok = ok && worst_resid < 1e-9 && worst_orth < 1e-10 && worst_ratio <= 1.0 + 1e-9 && strict;
    detail << "; residual " << fmt(worst_resid) << " (tol 1e-9); orthogonality "
           << fmt(worst_orth) << " (tol 1e-10); max ratio " << fmt(worst_ratio)
           << (strict ? " (<1 for non-constant data)" : " (strict inequality violated)");
    return pass_fail(name, ok, detail.str());
}

// ---- 7. cigar model --------------------------------------------------------

CheckResult check_cigar_model(int workers) {
    const ModelSpec model = ModelSpec::cigar(5.0);
    // dimension of the function space: monomials with finite norm
    int dim = 0;
    for (int k = 0;; ++k) {
        try {
            norm_closed_form(model, 0, MultiIndex(std::vector<int>{k}));
            ++dim;
        } catch (const std::domain_error&) {
            break;
        }
    }
    auto values = [](const SpectralReport& r) {
        std::vector<double> v;
        for (const EigenCluster& c : r.eigenvalues)
            for (int i = 0; i < c.multiplicity; ++i)
                v.push_back(c.value);
        return v;
    };
    const std::vector<double> s0 = values(spectrum(model, 4, OperatorKind::Box0, workers));
    const std::vector<double> s1 = values(spectrum(model, 3, OperatorKind::Box1, workers));
    double worst = 0.0;
    bool ok = dim == 5 && s0.size() == 5 && s1.size() == 4;
    if (ok) {
        for (std::size_t i = 0; i < 5; ++i)
            worst = std::max(worst, std::abs(s0[i] - 5.0 * static_cast<double>(i)));
        for (std::size_t i = 0; i < 4; ++i)
            worst = std::max(worst, std::abs(s1[i] - 5.0 * static_cast<double>(i + 1)));
        ok = worst < 1e-10;
    }
    return pass_fail("cigar-model", ok,
                     "dim A^2 = " + std::to_string(dim) +
                         " (expect 5); spectra vs {0,5,10,15,20}/{5,10,15,20}: " + fmt(worst) +
                         " (tol 1e-10)");
}

// ---- 8. unbounded partial sums --------------------------------------------

CheckResult check_unboundedness() {
    const ModelSpec model = ModelSpec::hyperbolic(1, 1.0);
    const UnboundednessReport r = unboundedness_demo(model, 100000);
    const double asym = std::abs(r.sum_dbar / (model.alpha * std::log(100000.0)) - 1.0);
    const bool ok = asym < 0.05 && r.max_ratio_rel_diff < 1e-8;
    return pass_fail("unbounded-partial-sums", ok,
                     "S_N/(alpha ln N) defect " + fmt(asym) + " (tol 0.05); norm-ratio identity " +
                         fmt(r.max_ratio_rel_diff) + " (tol 1e-8, k <= 30)");
}

// ---- 9. geometry audit -----------------------------------------------------

CheckResult check_geometry_audit() {
    std::ostringstream detail;
    bool ok = true;

    // duality constants of the built-in profiles vs the operator level
    const ModelSpec hyp = ModelSpec::hyperbolic(2, 1.5);
    const GeometryReport gk = check_kahler_duality(builtin_profile(hyp));
    ok = ok && gk.constancy_defect < 1e-8 &&
         std::abs(gk.holomorphicity_constant - duality_constant(hyp)) < 1e-10;

    const ModelSpec std2 = ModelSpec::standard(2, 1.0);
    const GeometryReport gc = check_conformal_duality(builtin_profile(std2), 2);
    ok = ok && gc.constancy_defect < 1e-8 &&
         std::abs(gc.holomorphicity_constant - duality_constant(std2)) < 1e-10;
    detail << "builtin constants " << fmt(gk.holomorphicity_constant) << "/"
           << fmt(gc.holomorphicity_constant) << " defects " << fmt(gk.constancy_defect) << "/"
           << fmt(gc.constancy_defect);

    // the two classical C^2 profiles with holomorphic dual field -alpha z.d/dz
    const RadialProfile p1 = profile_from_expressions(
        RadialProfile::Kind::ConformalFactor, "2*log(1+r)",
        "2*log(1+r) - 0.5*(1+r)^3/3", std::numeric_limits<double>::infinity());
    const RadialProfile p2 = profile_from_expressions(
        RadialProfile::Kind::ConformalFactor, "r", "r - 0.5*exp(r)",
        std::numeric_limits<double>::infinity());
    for (const RadialProfile* p : {&p1, &p2}) {
        const GeometryReport g = check_conformal_duality(*p, 2);
        ok = ok && g.constancy_defect < 1e-8 &&
             std::abs(g.holomorphicity_constant - (-0.5)) < 1e-10;
        detail << "; profile constant " << fmt(g.holomorphicity_constant) << " defect "
               << fmt(g.constancy_defect);
    }

    // curvature threshold for the exponential weight: epsilon* = alpha-n-1
    const ModelSpec hyp4 = ModelSpec::hyperbolic(2, 4.0);
    const double threshold = curvature_threshold(hyp4, 0.0, 3.0);
    ok = ok && std::abs(threshold - 1.0) < 1e-6;
    detail << "; threshold " << fmt(threshold) << " (expect 1, tol 1e-6)";

    // the standard-weight condition fails near the boundary (|z| = 0.9)
    const GeometryReport fail = curvature_condition(std2, 0.1, 2.0);
    double at081 = 0.0;
    for (std::size_t i = 0; i < fail.grid.size(); ++i)
        if (std::abs(fail.grid[i] - 0.81) < 5e-3)
            at081 = std::min(at081, fail.min_eigenvalue[i]);
    ok = ok && at081 < 0.0;
    detail << "; min eigenvalue at r=0.81: " << fmt(at081) << " (< 0)";

    return pass_fail("geometry-audit", ok, detail.str());
}

// ---- 10. adjointness -------------------------------------------------------

CheckResult check_adjointness() {
    std::mt19937 rng(715);
    double worst = 0.0;
    struct Case {
        ModelSpec model;
        int deg0, deg1, deg2; // degree caps per form degree
    };
    const std::vector<Case> cases{
        {ModelSpec::segal_bargmann(1), 5, 5, 5},
        {ModelSpec::segal_bargmann(2), 5, 5, 5},
        {ModelSpec::hyperbolic(1, 2.0), 5, 5, 5},
        {ModelSpec::hyperbolic(2, 1.5), 5, 5, 5},
        {ModelSpec::standard(2, 1.5), 5, 5, 5},
        {ModelSpec::cigar(5.0), 4, 3, 3},
    };
    for (const Case& c : cases) {
        for (int pair = 0; pair < 2; ++pair) {
            if (pair == 1 && c.model.n < 2)
                continue;
            for (int trial = 0; trial < 100; ++trial) {
                const FormCoefficients u =
                    random_polynomial(c.model, pair, pair == 0 ? c.deg0 : c.deg1 - 1, rng);
                const FormCoefficients v =
                    random_polynomial(c.model, pair + 1, pair == 0 ? c.deg1 : c.deg2, rng);
                const std::complex<double> lhs = inner_product(dbar(u), v);
                const std::complex<double> rhs = inner_product(u, dbar_adjoint(v));
                const double den = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
                worst = std::max(worst, std::abs(lhs - rhs) / den);
            }
        }
    }
    return pass_fail("adjointness", worst < 1e-9,
                     "max relative pairing defect " + fmt(worst) +
                         " (tol 1e-9, 100 random pairs per model and degree pair)");
}

// ---- 11. basic identity ----------------------------------------------------

CheckResult check_basic_identity() {
    const ModelSpec model = ModelSpec::segal_bargmann(1);
    double worst = 0.0, min_g = 0.0, ratio = 0.0;
    for (int k = 0; k <= 5; ++k) {
        FormCoefficients u(model, 1);
        u.add_one_form(MultiIndex(std::vector<int>{k}), 0, 1.0);
        const BasicIdentityReport r = basic_identity_diagnostic(model, u);
        min_g = std::min(min_g, r.gradient_term);
        // independent oracle: sum int |du|^2 e^{-|z|^2} = pi k * k!
        const double oracle = k == 0 ? 0.0 : M_PI * k * std::exp(ln_factorial(k));
        worst = std::max(worst, std::abs(r.gradient_term - oracle) / std::max(oracle, 1.0));
        if (k > 0)
            ratio = r.ratio;
    }
    // nonnegativity across the other feasible models
    for (const ModelSpec& m : {ModelSpec::cigar(6.0), ModelSpec::hyperbolic(1, 2.0)}) {
        for (int k = 0; k <= 3; ++k) {
            FormCoefficients u(m, 1);
            u.add_one_form(MultiIndex(std::vector<int>{k}), 0, 1.0);
            min_g = std::min(min_g, basic_identity_diagnostic(m, u).gradient_term);
        }
    }
    const bool ok = min_g >= -1e-8 && worst < 1e-6;
    return pass_fail("basic-identity", ok,
                     "flat-model gradient term vs oracle: " + fmt(worst) +
                         " (tol 1e-6); min G " + fmt(min_g) +
                         " (tol -1e-8); measured gradient constant " + fmt(ratio));
}

} // namespace

std::vector<CheckResult> run_verification_suite(int workers) {
    std::vector<CheckResult> results;
    results.push_back(check_conformal_norm_duality());
    results.push_back(check_exponential_norm_duality());
    results.push_back(check_hyperbolic_spectrum(workers));
    results.push_back(check_standard_spectrum(workers));
    results.push_back(check_sharp_solve("standard-sharp-solve", ModelSpec::standard(2, 1.0)));
    results.push_back(check_sharp_solve("hyperbolic-sharp-solve", ModelSpec::hyperbolic(2, 1.0)));
    results.push_back(check_cigar_model(workers));
    results.push_back(check_unboundedness());
    results.push_back(check_geometry_audit());
    results.push_back(check_adjointness());
    results.push_back(check_basic_identity());
    return results;
}

} // namespace dbar
