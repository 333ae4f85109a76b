#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dbar/linalg.hpp"
#include "dbar/multiindex.hpp"
#include "dbar/quadrature.hpp"
#include "dbar/special.hpp"

#include <cmath>
#include <random>

using namespace dbar;

TEST_CASE("ln_gamma against reference values") {
    CHECK(ln_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(ln_gamma(2.0) == doctest::Approx(0.0).epsilon(1e-13));
    CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-13));
    CHECK(ln_gamma(6.0) == doctest::Approx(std::log(120.0)).epsilon(1e-13));
    // Gamma(11.5) computed independently via the recurrence from Gamma(0.5)
    double g = std::sqrt(M_PI);
    for (double x = 0.5; x < 11.0; x += 1.0)
        g *= x;
    CHECK(ln_gamma(11.5) == doctest::Approx(std::log(g)).epsilon(1e-12));
    CHECK(ln_gamma(150.0) == doctest::Approx(ln_factorial(149)).epsilon(1e-13));
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-3.2), std::domain_error);
}

TEST_CASE("ln_factorial recurrence") {
    CHECK(ln_factorial(0) == doctest::Approx(0.0));
    double acc = 0.0;
    for (int n = 1; n <= 60; ++n) {
        acc += std::log(static_cast<double>(n));
        CHECK(ln_factorial(n) == doctest::Approx(acc).epsilon(1e-14));
    }
}

TEST_CASE("Gauss-Legendre exactness and positivity") {
    for (int n : {5, 16, 40, 80}) {
        const QuadratureRule& rule = make_rule(QuadKind::GaussLegendre01, n);
        REQUIRE(static_cast<int>(rule.nodes.size()) == n);
        double wsum = 0.0;
        for (int i = 0; i < n; ++i) {
            CHECK(rule.weights[static_cast<std::size_t>(i)] > 0.0);
            CHECK(rule.nodes[static_cast<std::size_t>(i)] > 0.0);
            CHECK(rule.nodes[static_cast<std::size_t>(i)] < 1.0);
            if (i)
                CHECK(rule.nodes[static_cast<std::size_t>(i)] >
                      rule.nodes[static_cast<std::size_t>(i - 1)]);
            wsum += rule.weights[static_cast<std::size_t>(i)];
        }
        CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));
        // exact for monomials of degree <= 2n-1: int_0^1 x^k = 1/(k+1)
        for (int k : {1, 3, 2 * n - 2, 2 * n - 1}) {
            const double got = integrate(rule, [k](double x) { return std::pow(x, k); });
            CHECK(got == doctest::Approx(1.0 / (k + 1)).epsilon(1e-13));
        }
    }
}

TEST_CASE("Gauss-Laguerre moments are factorials") {
    for (int n : {10, 30, 61, 100}) { // 61/100 exercise the Golub-Welsch path
        const QuadratureRule& rule = make_rule(QuadKind::GaussLaguerre, n);
        REQUIRE(static_cast<int>(rule.nodes.size()) == n);
        for (int k : {0, 1, 5, 12}) {
            const double got = integrate(rule, [k](double s) { return std::pow(s, k); });
            CHECK(got == doctest::Approx(std::exp(ln_factorial(k))).epsilon(1e-11));
        }
    }
}

TEST_CASE("eigh reproduces a hand eigendecomposition") {
    // [[2,1],[1,2]] has eigenvalues 1 and 3
    SymmetricMatrix m(2);
    m.set(0, 0, 2.0);
    m.set(1, 1, 2.0);
    m.set(0, 1, 1.0);
    const EighResult e = eigh(m);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("eigh residual and orthogonality on random matrices") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int n : {3, 10, 25}) {
        SymmetricMatrix m(n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                m.set(i, j, dist(rng));
        const EighResult e = eigh(m);
        for (int col = 0; col < n; ++col) {
            for (int row = 0; row < n; ++row) {
                double mv = 0.0;
                for (int k = 0; k < n; ++k)
                    mv += m(row, k) * e.vectors[static_cast<std::size_t>(k * n + col)];
                const double lv = e.values[static_cast<std::size_t>(col)] *
                                  e.vectors[static_cast<std::size_t>(row * n + col)];
                CHECK(mv == doctest::Approx(lv).epsilon(1e-10).scale(1.0));
            }
            for (int col2 = 0; col2 <= col; ++col2) {
                double dot = 0.0;
                for (int k = 0; k < n; ++k)
                    dot += e.vectors[static_cast<std::size_t>(k * n + col)] *
                           e.vectors[static_cast<std::size_t>(k * n + col2)];
                CHECK(dot == doctest::Approx(col == col2 ? 1.0 : 0.0).epsilon(1e-12).scale(1.0));
            }
        }
        // trace and Frobenius norm are spectral invariants
        double tr = 0.0, fro2 = 0.0;
        for (double v : e.values) {
            tr += v;
            fro2 += v * v;
        }
        CHECK(tr == doctest::Approx(m.trace()).epsilon(1e-12));
        CHECK(std::sqrt(fro2) == doctest::Approx(m.frobenius_norm()).epsilon(1e-12));
    }
}

TEST_CASE("cholesky factor and triangular solves") {
    // SPD matrix A = B B^T for a fixed B
    SymmetricMatrix a(3);
    const double b[9] = {2, 0, 0, 1, 3, 0, 0.5, -1, 1.5};
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k)
                s += b[3 * i + k] * b[3 * j + k];
            a.set(i, j, s);
        }
    const std::vector<double> l = cholesky_lower(a);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(l[static_cast<std::size_t>(3 * i + j)] ==
                  doctest::Approx(b[3 * i + j]).epsilon(1e-13).scale(1.0));
    const std::vector<double> rhs{1.0, -2.0, 0.5};
    const std::vector<double> x = solve_lower(l, 3, rhs);
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = 0; j <= i; ++j)
            s += l[static_cast<std::size_t>(3 * i + j)] * x[static_cast<std::size_t>(j)];
        CHECK(s == doctest::Approx(rhs[static_cast<std::size_t>(i)]).epsilon(1e-13));
    }
    const std::vector<double> y = solve_lower_transposed(l, 3, rhs);
    for (int i = 0; i < 3; ++i) {
        double s = 0.0;
        for (int j = i; j < 3; ++j)
            s += l[static_cast<std::size_t>(3 * j + i)] * y[static_cast<std::size_t>(j)];
        CHECK(s == doctest::Approx(rhs[static_cast<std::size_t>(i)]).epsilon(1e-13));
    }

    SymmetricMatrix indef(2);
    indef.set(0, 0, 1.0);
    indef.set(1, 1, -1.0);
    CHECK_THROWS_AS(cholesky_lower(indef), std::domain_error);
}

TEST_CASE("multi-index enumeration order and counts") {
    const auto v = enumerate_multiindices(2, 1);
    REQUIRE(v.size() == 2);
    CHECK(v[0].exponents() == std::vector<int>{1, 0});
    CHECK(v[1].exponents() == std::vector<int>{0, 1});

    for (int n : {1, 2, 3}) {
        for (int m = 0; m <= 6; ++m) {
            const auto all = enumerate_multiindices(n, m);
            CHECK(static_cast<double>(all.size()) == binomial(m + n - 1, n - 1));
            for (std::size_t i = 0; i < all.size(); ++i) {
                CHECK(all[i].order() == m);
                if (i)
                    CHECK(all[i - 1][0] >= all[i][0]); // first component descending
            }
        }
    }
}

TEST_CASE("multi-index arithmetic") {
    const MultiIndex j(std::vector<int>{2, 0, 1});
    CHECK(j.order() == 3);
    CHECK(j.log_factorial() == doctest::Approx(std::log(2.0)));
    CHECK(j.incremented(1).exponents() == std::vector<int>{2, 1, 1});
    CHECK(j.decremented(0).exponents() == std::vector<int>{1, 0, 1});
    CHECK_THROWS(j.decremented(1));
    CHECK(MultiIndex::zeros(3) < j);
    CHECK(binomial(10, 3) == doctest::Approx(120.0));
    CHECK(binomial(52, 26) == doctest::Approx(495918532948104.0));
}
