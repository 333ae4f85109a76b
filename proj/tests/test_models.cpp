#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dbar/cli.hpp"
#include "dbar/model.hpp"

#include <cmath>

using namespace dbar;

TEST_CASE("factory validation") {
    CHECK_THROWS_AS(ModelSpec::segal_bargmann(0), std::domain_error);
    CHECK_THROWS_AS(ModelSpec::hyperbolic(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(ModelSpec::hyperbolic(1, -2.0), std::domain_error);
    CHECK_THROWS_AS(ModelSpec::standard(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(ModelSpec::cigar(1.5), std::domain_error);
    CHECK_NOTHROW(ModelSpec::cigar(2.0));
}

TEST_CASE("standard model stores both parameterizations") {
    const ModelSpec m = ModelSpec::standard(2, 1.5);
    CHECK(m.gamma == doctest::Approx(1.5));
    CHECK(m.alpha == doctest::Approx(1.0 - 2 - 1.5)); // alpha = 1 - n - gamma
    CHECK(m.ball_domain());
    CHECK_FALSE(ModelSpec::segal_bargmann(1).ball_domain());
    CHECK_FALSE(ModelSpec::cigar(3.0).ball_domain());
}

TEST_CASE("duality constants") {
    CHECK(duality_constant(ModelSpec::segal_bargmann(3)) == doctest::Approx(1.0));
    CHECK(duality_constant(ModelSpec::hyperbolic(2, 1.5)) == doctest::Approx(1.5));
    CHECK(duality_constant(ModelSpec::standard(2, 0.75)) == doctest::Approx(0.75));
    CHECK(duality_constant(ModelSpec::cigar(5.0)) == doctest::Approx(5.0));
}

TEST_CASE("radial weight densities") {
    CHECK(radial_weight_density(ModelSpec::segal_bargmann(1), 2.0) ==
          doctest::Approx(std::exp(-2.0)));
    // (1-t)^{-n-1} e^{-alpha/(1-t)} at t = 0.5, n = 2, alpha = 1
    CHECK(radial_weight_density(ModelSpec::hyperbolic(2, 1.0), 0.5) ==
          doctest::Approx(8.0 * std::exp(-2.0)).epsilon(1e-14));
    // (1-t)^{gamma-1}
    CHECK(radial_weight_density(ModelSpec::standard(2, 3.0), 0.75) ==
          doctest::Approx(0.0625).epsilon(1e-14));
    // (1+t)^{-(alpha+1)}
    CHECK(radial_weight_density(ModelSpec::cigar(4.0), 1.0) ==
          doctest::Approx(std::pow(2.0, -5.0)).epsilon(1e-14));

    CHECK_THROWS_AS(radial_weight_density(ModelSpec::hyperbolic(1, 1.0), 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(radial_weight_density(ModelSpec::standard(1, 1.0), 1.5),
                    std::domain_error);
    CHECK_THROWS_AS(radial_weight_density(ModelSpec::cigar(3.0), -0.1), std::domain_error);
    CHECK_NOTHROW(radial_weight_density(ModelSpec::cigar(3.0), 1e6));
}

TEST_CASE("metric component scales") {
    CHECK(metric_component_scale(ModelSpec::segal_bargmann(2), 3.0, 2) == doctest::Approx(1.0));
    CHECK(metric_component_scale(ModelSpec::hyperbolic(2, 1.0), 0.5, 1) == doctest::Approx(0.5));
    CHECK(metric_component_scale(ModelSpec::standard(2, 1.0), 0.5, 2) == doctest::Approx(0.25));
    CHECK(metric_component_scale(ModelSpec::cigar(3.0), 1.0, 1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(metric_component_scale(ModelSpec::cigar(3.0), 1.0, 2), std::domain_error);
    CHECK_THROWS_AS(metric_component_scale(ModelSpec::segal_bargmann(1), 1.0, 3),
                    std::domain_error);
}

TEST_CASE("model grammar round-trips through the parser") {
    for (const ModelSpec& m :
         {ModelSpec::segal_bargmann(2), ModelSpec::hyperbolic(2, 1.5),
          ModelSpec::standard(3, 0.25), ModelSpec::cigar(5.0)}) {
        const ModelSpec back = parse_model(m.name());
        CHECK(back.kind == m.kind);
        CHECK(back.n == m.n);
        CHECK(back.alpha == doctest::Approx(m.alpha));
        CHECK(back.gamma == doctest::Approx(m.gamma));
    }
}

TEST_CASE("parser rejects malformed specs") {
    CHECK_THROWS_AS(parse_model("bergman:n=1"), std::domain_error);
    CHECK_THROWS_AS(parse_model("hyperbolic:n=2"), std::domain_error);        // alpha missing
    CHECK_THROWS_AS(parse_model("hyperbolic:n=2,alpha=0"), std::domain_error);
    CHECK_THROWS_AS(parse_model("standard:n=2,gamma=1,beta=3"), std::domain_error);
    CHECK_THROWS_AS(parse_model("standard:n=two,gamma=1"), std::domain_error);
    CHECK_THROWS_AS(parse_model("standard:n=2.5,gamma=1"), std::domain_error);
    CHECK_THROWS_AS(parse_model("cigar:alpha"), std::domain_error);
    const ModelSpec sb = parse_model("segal-bargmann"); // n defaults to 1
    CHECK(sb.n == 1);
}
