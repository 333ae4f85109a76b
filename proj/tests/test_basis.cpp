#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dbar/errors.hpp"
#include "dbar/norms.hpp"
#include "dbar/special.hpp"

#include <cmath>
#include <functional>

using namespace dbar;

namespace {

// plain adaptive Simpson on [a,b], used as an independent oracle
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace

TEST_CASE("angular factor") {
    // ang(J) = pi^n J! / (n-1+|J|)!
    CHECK(log_angular_factor(MultiIndex(std::vector<int>{0})) ==
          doctest::Approx(std::log(M_PI)).epsilon(1e-14));
    CHECK(log_angular_factor(MultiIndex(std::vector<int>{2, 1})) ==
          doctest::Approx(std::log(M_PI * M_PI * 2.0 / 24.0)).epsilon(1e-13));
    CHECK(log_angular_factor(MultiIndex(std::vector<int>{1, 1, 1})) ==
          doctest::Approx(3.0 * std::log(M_PI) - ln_factorial(5)).epsilon(1e-13));
}

TEST_CASE("escalated integrals converge") {
    CHECK(escalated_integral(QuadKind::GaussLegendre01, 10,
                             [](double x) { return std::pow(x, 20.0); }) ==
          doctest::Approx(1.0 / 21.0).epsilon(1e-12));
    // int_0^inf e^{-s} cos s ds = 1/2
    CHECK(escalated_integral(QuadKind::GaussLaguerre, 10,
                             [](double s) { return std::cos(s); }) ==
          doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("flat-model norms are pi^n J! at every degree") {
    const ModelSpec sb2 = ModelSpec::segal_bargmann(2);
    const MultiIndex j(std::vector<int>{3, 1});
    const double expect = M_PI * M_PI * 6.0;
    for (int p = 0; p <= 2; ++p) {
        CHECK(norm_closed_form(sb2, p, j) == doctest::Approx(expect).epsilon(1e-13));
        CHECK(norm_quadrature(sb2, p, j, p == 0 ? -1 : 0, 40, p == 2 ? 1 : -1) ==
              doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("standard-weight norms against hand Beta integrals") {
    // n=1, gamma=2, p=0, k=1:  2pi int r^3 (1-r^2) dr = pi/6
    CHECK(norm_closed_form(ModelSpec::standard(1, 2.0), 0, MultiIndex(std::vector<int>{1})) ==
          doctest::Approx(M_PI / 6.0).epsilon(1e-13));
    // n=1, gamma=1, p=1, k=1:  pi int t (1-t)^{1-1} (1-t)^1 dt ... = pi/6 as well
    CHECK(norm_closed_form(ModelSpec::standard(1, 1.0), 1, MultiIndex(std::vector<int>{1})) ==
          doctest::Approx(M_PI / 6.0).epsilon(1e-13));
    // n=2, gamma=1, p=0, J=(1,0): pi^2 1! int t^2 dt / ... = pi^2 B(3,1) J!/(;) check by quadrature
    const ModelSpec m = ModelSpec::standard(2, 1.0);
    const MultiIndex j10(std::vector<int>{1, 0});
    CHECK(norm_quadrature(m, 0, j10, -1, 40) ==
          doctest::Approx(norm_closed_form(m, 0, j10)).epsilon(1e-10));
}

TEST_CASE("cigar norms: Gamma-ratio values and the divergence threshold") {
    const ModelSpec cg = ModelSpec::cigar(5.0);
    CHECK(norm_closed_form(cg, 0, MultiIndex(std::vector<int>{0})) ==
          doctest::Approx(M_PI / 5.0).epsilon(1e-13));
    CHECK(norm_closed_form(cg, 0, MultiIndex(std::vector<int>{2})) ==
          doctest::Approx(M_PI / 30.0).epsilon(1e-13));
    CHECK(norm_closed_form(cg, 0, MultiIndex(std::vector<int>{4})) ==
          doctest::Approx(M_PI / 5.0).epsilon(1e-13));
    CHECK_THROWS_AS(norm_closed_form(cg, 0, MultiIndex(std::vector<int>{5})),
                    std::domain_error);
    CHECK_THROWS_AS(norm_closed_form(cg, 1, MultiIndex(std::vector<int>{4})),
                    std::domain_error);
    CHECK_THROWS(norm_quadrature(cg, 0, MultiIndex(std::vector<int>{5}), -1, 40));
}

TEST_CASE("exponential-weight norm against an adaptive-Simpson oracle") {
    const ModelSpec hyp = ModelSpec::hyperbolic(1, 1.0);
    const MultiIndex j0(std::vector<int>{0});
    // c_0^2 = pi int_0^1 (1-t)^{-2} e^{-1/(1-t)} dt = pi/e exactly
    const double got = norm_quadrature(hyp, 0, j0, -1, 40);
    CHECK(got == doctest::Approx(M_PI / std::exp(1.0)).epsilon(1e-12));
    const double oracle =
        M_PI * adaptive_simpson(
                   [](double t) { return std::exp(-1.0 / (1.0 - t)) / ((1.0 - t) * (1.0 - t)); },
                   0.0, 1.0 - 1e-12, 1e-12);
    CHECK(got == doctest::Approx(oracle).epsilon(1e-8));

    CHECK_THROWS_AS(norm_closed_form(hyp, 0, j0), std::domain_error);
}

TEST_CASE("hyp_radial matches the direct [0,1] integral") {
    const ModelSpec hyp = ModelSpec::hyperbolic(2, 1.5);
    for (int m : {0, 3}) {
        for (double q : {-3.0, -2.0, -1.0}) {
            const double direct = adaptive_simpson(
                [&](double t) {
                    return std::pow(t, m + hyp.n - 1) * std::pow(1.0 - t, q) *
                           std::exp(-hyp.alpha / (1.0 - t));
                },
                0.0, 1.0 - 1e-12, 1e-14);
            CHECK(hyp_radial(hyp, m, q, 40) == doctest::Approx(direct).epsilon(1e-9));
        }
    }
}

TEST_CASE("flat-model radial moments are Gamma values") {
    // int t^{m+n-1} e^{-t} dt = (m+n-1)!
    CHECK(radial_moment(ModelSpec::segal_bargmann(1), 3, 0, 40) ==
          doctest::Approx(6.0).epsilon(1e-12));
    CHECK(radial_moment(ModelSpec::segal_bargmann(2), 2, 0, 40) ==
          doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("duality identity residuals") {
    CHECK(verify_duality_identity(ModelSpec::segal_bargmann(1),
                                  MultiIndex(std::vector<int>{0}), 0) < 1e-13);
    const ModelSpec cs = ModelSpec::standard(2, 1.5);
    const MultiIndex j21(std::vector<int>{2, 1});
    CHECK(verify_duality_identity(cs, j21, 0) < 1e-12);
    CHECK(verify_duality_identity(cs, j21, 1) < 1e-12);
    CHECK(verify_duality_identity(ModelSpec::hyperbolic(1, 2.0),
                                  MultiIndex(std::vector<int>{3}), 0) < 1e-8);
    CHECK(verify_duality_identity(ModelSpec::cigar(8.0),
                                  MultiIndex(std::vector<int>{2}), 0) < 1e-10);
    // and all four models over a degree sweep
    for (const ModelSpec& m : {ModelSpec::segal_bargmann(2), ModelSpec::hyperbolic(2, 1.0),
                               ModelSpec::standard(2, 0.5), ModelSpec::cigar(12.0)}) {
        for (int d = 0; d <= 6; ++d)
            for (const MultiIndex& j : enumerate_multiindices(m.n, d))
                for (int k = 0; k < m.n; ++k) {
                    if (m.kind == ModelKind::Cigar && !(d + 1 < m.alpha - 1))
                        continue;
                    CHECK(verify_duality_identity(m, j, k) < 1e-8);
                }
    }
}

TEST_CASE("ball-model norms decrease with degree") {
    double prev_std = 1e300, prev_hyp = 1e300;
    for (int k = 0; k <= 10; ++k) {
        const MultiIndex j(std::vector<int>{k, 0});
        const double cs = norm_closed_form(ModelSpec::standard(2, 1.0), 0, j);
        const double hy = norm_quadrature(ModelSpec::hyperbolic(2, 1.0), 0, j, -1, 40);
        CHECK(cs < prev_std);
        CHECK(hy < prev_hyp);
        prev_std = cs;
        prev_hyp = hy;
    }
}

TEST_CASE("block basis ordering") {
    const ModelSpec m = ModelSpec::standard(2, 1.0);
    const std::vector<FormKey> b = block_basis(m, 1, 1);
    REQUIRE(b.size() == 4);
    CHECK(b[0].J.exponents() == std::vector<int>{1, 0});
    CHECK(b[0].a == 0);
    CHECK(b[1].a == 1);
    CHECK(b[2].J.exponents() == std::vector<int>{0, 1});
    const std::vector<FormKey> b2 = block_basis(ModelSpec::segal_bargmann(3), 0, 2);
    REQUIRE(b2.size() == 3);
    CHECK((b2[0].a == 0 && b2[0].b == 1));
    CHECK((b2[1].a == 0 && b2[1].b == 2));
    CHECK((b2[2].a == 1 && b2[2].b == 2));
}

TEST_CASE("hyperbolic Gram block: sparsity pattern and positivity") {
    const ModelSpec hyp = ModelSpec::hyperbolic(2, 1.5);
    for (int m : {1, 2, 3}) {
        const std::vector<FormKey> basis = block_basis(hyp, m, 1);
        const SymmetricMatrix g = gram_block(hyp, m, 1);
        REQUIRE(g.order() == static_cast<int>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i)
            for (std::size_t jj = 0; jj < basis.size(); ++jj) {
                const FormKey& x = basis[i];
                const FormKey& y = basis[jj];
                const bool coupled = x.J.incremented(x.a) == y.J.incremented(y.a);
                if (!coupled)
                    CHECK(g(static_cast<int>(i), static_cast<int>(jj)) == 0.0);
            }
        CHECK_NOTHROW(cholesky_lower(g)); // positive definite
    }
}

TEST_CASE("inner product is Hermitian and matches diagonal norms") {
    const ModelSpec m = ModelSpec::standard(2, 1.0);
    FormCoefficients u(m, 1), v(m, 1);
    u.add_one_form(MultiIndex(std::vector<int>{1, 0}), 0, {1.0, 2.0});
    u.add_one_form(MultiIndex(std::vector<int>{0, 1}), 1, {0.5, 0.0});
    v.add_one_form(MultiIndex(std::vector<int>{1, 0}), 0, {0.0, -1.0});
    const std::complex<double> uv = inner_product(u, v);
    const std::complex<double> vu = inner_product(v, u);
    CHECK(uv.real() == doctest::Approx(vu.real()).epsilon(1e-12));
    CHECK(uv.imag() == doctest::Approx(-vu.imag()).epsilon(1e-12));
    const double n2 = inner_product(u, u).real();
    const double expect =
        5.0 * norm_closed_form(m, 1, MultiIndex(std::vector<int>{1, 0})) +
        0.25 * norm_closed_form(m, 1, MultiIndex(std::vector<int>{0, 1}));
    CHECK(n2 == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("norm table caches in log space") {
    const ModelSpec m = ModelSpec::standard(2, 0.25);
    const NormTable table(m, 0, 20);
    CHECK(table.method() == NormTable::Method::ClosedForm);
    const MultiIndex j(std::vector<int>{12, 8});
    const FormKey key{j, -1, -1};
    CHECK(table.log_squared_norm(key) ==
          doctest::Approx(std::log(norm_closed_form(m, 0, j))).epsilon(1e-12));
    CHECK(table.log_scale(key) == doctest::Approx(-0.5 * table.log_squared_norm(key)));

    const NormTable hyp_table(ModelSpec::hyperbolic(1, 1.0), 0, 10);
    CHECK(hyp_table.method() == NormTable::Method::Quadrature);
}
