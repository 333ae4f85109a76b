#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int status = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(DBAR_BIN) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, got);
    const int rc = pclose(pipe);
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

} // namespace

TEST_CASE("spectrum emits the known eigenvalue list") {
    const RunResult r = run("spectrum --model standard:n=2,gamma=1 --mmax 1");
    REQUIRE(r.status == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("schema") == 1);
    const auto eig = doc.at("eigenvalues").get<std::vector<double>>();
    REQUIRE(eig.size() == 6);
    const double expect[6] = {1, 1, 2, 2, 2, 4};
    for (int i = 0; i < 6; ++i)
        CHECK(eig[static_cast<std::size_t>(i)] == doctest::Approx(expect[i]).epsilon(1e-10));
}

TEST_CASE("identical invocations produce identical bytes") {
    const std::string args =
        "spectrum --model hyperbolic:n=2,alpha=1.5 --mmax 4 --workers 1";
    const RunResult a = run(args);
    const RunResult b = run("spectrum --model hyperbolic:n=2,alpha=1.5 --mmax 4 --workers 3");
    REQUIRE(a.status == 0);
    REQUIRE(b.status == 0);
    CHECK(a.out == b.out); // also independent of the worker count
    CHECK(a.out == run(args).out);
}

TEST_CASE("solve reports the equality case") {
    const std::string eta_path = "cli_eta_const.json";
    {
        std::ofstream f(eta_path);
        f << R"([{"J":[0,0],"k":1,"re":1.0,"im":0.0}])";
    }
    const RunResult r = run("solve --model standard:n=2,gamma=1 --eta " + eta_path);
    REQUIRE(r.status == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("norm_ratio").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(doc.at("residual_dbar").get<double>() < 1e-12);
    std::remove(eta_path.c_str());
}

TEST_CASE("norms CSV carries the documented columns") {
    const RunResult r = run("norms --model segal-bargmann:n=1 --max-order 2");
    REQUIRE(r.status == 0);
    CHECK(r.out.rfind("model,p,J,k,closed_form,quadrature,rel_diff,duality_residual\n", 0) == 0);
    // |z^0|^2 = pi appears on the first data row
    CHECK(r.out.find("segal-bargmann:n=1,0,0,,3.14159") != std::string::npos);
}

TEST_CASE("block JSON round-trips through a parser") {
    const RunResult r = run("block --model standard:n=2,gamma=1 --degree 1");
    REQUIRE(r.status == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.out);
    REQUIRE(doc.at("basis").size() == 4);
    CHECK(doc.at("matrix")[1][2].get<double>() == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(doc.at("gershgorin")[1].get<double>() == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("geometry verdicts") {
    const RunResult ok = run("geometry --model hyperbolic:n=2,alpha=4 --check curvature --eps 0.5");
    REQUIRE(ok.status == 0);
    CHECK(nlohmann::json::parse(ok.out).at("nonnegative") == true);
    const RunResult bad = run("geometry --model hyperbolic:n=2,alpha=4 --check curvature --eps 1.5");
    REQUIRE(bad.status == 0);
    CHECK(nlohmann::json::parse(bad.out).at("nonnegative") == false);
    const RunResult prof =
        run("geometry --profile \"conformal:phi=r,psi=r-0.5*exp(r)\" --n 2 --check duality");
    REQUIRE(prof.status == 0);
    const nlohmann::json doc = nlohmann::json::parse(prof.out);
    CHECK(doc.at("has_constant") == true);
    CHECK(doc.at("constant").get<double>() == doctest::Approx(-0.5).epsilon(1e-8));
}

TEST_CASE("exit codes separate domain, accuracy and I/O failures") {
    CHECK(run("norms --model hyperbolic:n=2").status == 1);     // alpha missing
    CHECK(run("norms --model nosuch:n=1").status == 1);
    CHECK(run("spectrum --model cigar:alpha=5 --mmax 9").status == 1); // divergent block
    CHECK(run("solve --model cigar:alpha=5 --eta does_not_exist.json").status == 3);
    CHECK(run("totally-unknown-verb").status == 1);
    CHECK(run("spectrum --model cigar:alpha=5 --mmax 2 --frobnicate").status == 1);
    CHECK(run("--help").status == 0);
    CHECK(run("--version").status == 0);
}
