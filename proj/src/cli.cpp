#include "dbar/cli.hpp"

#include "dbar/block.hpp"
#include "dbar/errors.hpp"
#include "dbar/geometry.hpp"
#include "dbar/norms.hpp"
#include "dbar/spectral.hpp"
#include "dbar/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <thread>

namespace dbar {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kToolVersion = "0.1.0";

class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

double parse_number(const std::string& s, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size())
        throw std::domain_error("model parameter " + key + ": invalid number '" + s + "'");
    return v;
}

std::string fmt17(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw io_error("cannot open output file '" + path + "'");
    out << content;
    if (!out.good())
        throw io_error("write failed for '" + path + "'");
}

json header(const ModelSpec& model) {
    json h;
    h["schema"] = 1;
    h["tool"] = "dbar";
    h["version"] = kToolVersion;
    h["model"] = model.name();
    h["n"] = model.n;
    switch (model.kind) {
    case ModelKind::ConformalStandard:
        h["gamma"] = model.gamma;
        break;
    case ModelKind::HyperbolicExponential:
    case ModelKind::Cigar:
        h["alpha"] = model.alpha;
        break;
    case ModelKind::SegalBargmann:
        break;
    }
    return h;
}

std::string multiindex_csv(const MultiIndex& j) {
    std::string s;
    for (int i = 0; i < j.dim(); ++i) {
        if (i)
            s += ';';
        s += std::to_string(j[i]);
    }
    return s;
}

json key_json(const FormKey& key) {
    json k;
    k["J"] = key.J.exponents();
    if (key.a >= 0)
        k["k"] = key.a + 1;
    if (key.b >= 0)
        k["l"] = key.b + 1;
    return k;
}

// ---- norms -----------------------------------------------------------------

int run_norms(const ModelSpec& model, int max_order, int nodes, const std::string& emit) {
    const bool closed = model.kind != ModelKind::HyperbolicExponential;
    std::ostringstream out;
    out << "model,p,J,k,closed_form,quadrature,rel_diff,duality_residual\n";
    for (int p = 0; p <= 1; ++p) {
        for (int m = 0; m <= max_order; ++m) {
            if (model.kind == ModelKind::Cigar && !(m < model.alpha - p))
                continue; // divergent tail of the norm table
            for (const MultiIndex& j : enumerate_multiindices(model.n, m)) {
                const int kmax = p == 0 ? 0 : model.n - 1;
                for (int k = p == 0 ? -1 : 0; k <= kmax && (p > 0 || k < 0); ++k) {
                    const double q = norm_quadrature(model, p, j, k, nodes);
                    out << model.name() << ',' << p << ',' << multiindex_csv(j) << ',';
                    if (k >= 0)
                        out << k + 1;
                    out << ',';
                    if (closed) {
                        const double cf = norm_closed_form(model, p, j);
                        out << fmt17(cf) << ',' << fmt17(q) << ','
                            << fmt17(std::abs(q - cf) / cf) << ',';
                    } else {
                        out << ',' << fmt17(q) << ",,";
                    }
                    if (p == 1)
                        out << fmt17(verify_duality_identity(model, j, k));
                    out << '\n';
                }
            }
        }
    }
    write_output(emit, out.str());
    return 0;
}

// ---- block -----------------------------------------------------------------

int run_block(const ModelSpec& model, int m, OperatorKind op, int nodes,
              const std::string& emit) {
    const BlockOperator block = assemble_block(model, m, op, nodes);
    json doc = header(model);
    doc["degree"] = m;
    doc["operator"] = op == OperatorKind::Box0 ? "box0" : "box1";
    doc["basis"] = json::array();
    for (const FormKey& key : block.basis)
        doc["basis"].push_back(key_json(key));
    doc["matrix"] = json::array();
    const int dim = block.matrix.order();
    for (int i = 0; i < dim; ++i) {
        json row = json::array();
        for (int jcol = 0; jcol < dim; ++jcol)
            row.push_back(block.matrix(i, jcol));
        doc["matrix"].push_back(std::move(row));
    }
    const auto [lo, hi] = block.gershgorin();
    doc["gershgorin"] = {lo, hi};
    write_output(emit, doc.dump(2) + "\n");
    return 0;
}

// ---- spectrum --------------------------------------------------------------

int run_spectrum(const ModelSpec& model, int m_max, OperatorKind op, int workers, int nodes,
                 const std::string& format, const std::string& emit) {
    const SpectralReport report = spectrum(model, m_max, op, workers, nodes);
    if (format == "csv") {
        std::ostringstream out;
        out << "block,value,multiplicity\n";
        for (const EigenCluster& c : report.eigenvalues)
            out << c.block_m << ',' << fmt17(c.value) << ',' << c.multiplicity << '\n';
        write_output(emit, out.str());
        return 0;
    }
    json doc = header(model);
    doc["m_max"] = m_max;
    doc["operator"] = op == OperatorKind::Box0 ? "box0" : "box1";
    doc["lambda_min"] = report.lambda_min;
    json flat = json::array();
    json clusters = json::array();
    for (const EigenCluster& c : report.eigenvalues) {
        for (int i = 0; i < c.multiplicity; ++i)
            flat.push_back(c.value);
        clusters.push_back(json{{"block", c.block_m},
                                {"value", c.value},
                                {"multiplicity", c.multiplicity}});
    }
    doc["eigenvalues"] = std::move(flat);
    doc["clusters"] = std::move(clusters);
    json disks = json::array();
    for (const auto& [lo, hi] : report.gershgorin)
        disks.push_back(json{lo, hi});
    doc["gershgorin"] = std::move(disks);
    write_output(emit, doc.dump(2) + "\n");
    return 0;
}

// ---- solve -----------------------------------------------------------------

FormCoefficients read_eta(const ModelSpec& model, const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw io_error("cannot open eta file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw std::domain_error(std::string("eta file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array())
        throw std::domain_error("eta file must be a JSON array of coefficient entries");
    FormCoefficients eta(model, 1);
    for (const json& entry : doc) {
        if (!entry.is_object() || !entry.contains("J") || !entry.contains("k"))
            throw std::domain_error("eta entry needs fields J (array) and k (component)");
        std::vector<int> exps = entry.at("J").get<std::vector<int>>();
        if (static_cast<int>(exps.size()) != model.n)
            throw std::domain_error("eta entry J has wrong dimension for the model");
        const int k = entry.at("k").get<int>();
        if (k < 1 || k > model.n)
            throw std::domain_error("eta entry component k must lie in 1..n");
        const double re = entry.value("re", 0.0);
        const double im = entry.value("im", 0.0);
        eta.add_one_form(MultiIndex(std::move(exps)), k - 1, {re, im});
    }
    return eta;
}

json form_json(const FormCoefficients& u) {
    json arr = json::array();
    for (const auto& [key, c] : u.table()) {
        json entry = key_json(key);
        entry["re"] = c.real();
        entry["im"] = c.imag();
        arr.push_back(std::move(entry));
    }
    return arr;
}

int run_solve(const ModelSpec& model, const std::string& eta_path, int nodes,
              const std::string& emit) {
    const FormCoefficients eta = read_eta(model, eta_path);
    const SolveReport report = solve_dbar(model, eta, nodes);
    json doc = header(model);
    doc["eta"] = form_json(report.eta);
    doc["solution"] = form_json(report.f);
    doc["residual_dbar"] = report.residual_dbar;
    doc["sharp_constant"] = duality_constant(model);
    doc["norm_ratio"] = report.norm_ratio;
    doc["orthogonality_defect"] = report.orthogonality_defect;
    write_output(emit, doc.dump(2) + "\n");
    return 0;
}

// ---- geometry --------------------------------------------------------------

RadialProfile parse_profile(const std::string& spec, double radius) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::domain_error("profile must look like kahler:h=...,psi=... or "
                                "conformal:phi=...,psi=...");
    const std::string kind_name = spec.substr(0, colon);
    std::string rest = spec.substr(colon + 1);
    RadialProfile::Kind kind;
    std::string f_key;
    if (kind_name == "kahler") {
        kind = RadialProfile::Kind::KahlerPotential;
        f_key = "h=";
    } else if (kind_name == "conformal") {
        kind = RadialProfile::Kind::ConformalFactor;
        f_key = "phi=";
    } else {
        throw std::domain_error("unknown profile kind '" + kind_name +
                                "' (expected kahler or conformal)");
    }
    if (rest.rfind(f_key, 0) != 0)
        throw std::domain_error("profile must start with " + f_key + "<expression>");
    const std::size_t psi_at = rest.find(",psi=");
    if (psi_at == std::string::npos)
        throw std::domain_error("profile needs a ,psi=<expression> part");
    const std::string f_expr = rest.substr(f_key.size(), psi_at - f_key.size());
    const std::string psi_expr = rest.substr(psi_at + 5);
    if (f_expr.empty() || psi_expr.empty())
        throw std::domain_error("profile expressions must be nonempty");
    return profile_from_expressions(kind, f_expr, psi_expr, radius);
}

json grid_column(const std::vector<double>& v) {
    return json(v);
}

int run_geometry(const std::string& model_spec, const std::string& profile_spec,
                 const std::string& check, int n, double epsilon, double sigma, double radius,
                 const std::string& emit) {
    json doc;
    RadialProfile profile;
    if (!model_spec.empty()) {
        const ModelSpec model = parse_model(model_spec);
        profile = builtin_profile(model);
        n = model.n;
        doc = header(model);
    } else {
        profile = parse_profile(profile_spec, radius);
        doc["schema"] = 1;
        doc["tool"] = "dbar";
        doc["version"] = kToolVersion;
        doc["profile"] = profile_spec;
        doc["n"] = n;
    }
    doc["check"] = check;
    if (check == "duality") {
        const GeometryReport r = profile.kind == RadialProfile::Kind::KahlerPotential
                                     ? check_kahler_duality(profile)
                                     : check_conformal_duality(profile, n);
        doc["identity"] = "holomorphic dual vector field";
        doc["has_constant"] = r.has_constant;
        doc["constant"] = r.holomorphicity_constant;
        doc["constancy_defect"] = r.constancy_defect;
        doc["grid"] = grid_column(r.grid);
        doc["coefficient"] = grid_column(r.coefficient);
    } else if (check == "torsion") {
        const GeometryReport r = torsion_profile(profile, n);
        doc["identity"] = "torsion trace of the Chern connection";
        doc["grid"] = grid_column(r.grid);
        doc["torsion_coefficient"] = grid_column(r.torsion_coefficient);
        doc["torsion_norm"] = grid_column(r.torsion_norm);
    } else if (check == "curvature") {
        const GeometryReport r = curvature_condition(profile, n, epsilon, sigma);
        doc["identity"] = "curvature lower bound";
        doc["epsilon"] = epsilon;
        doc["sigma"] = sigma;
        doc["nonnegative"] = r.min_eigenvalue_overall >= -1e-10;
        doc["min_eigenvalue_overall"] = r.min_eigenvalue_overall;
        doc["grid"] = grid_column(r.grid);
        doc["min_eigenvalue"] = grid_column(r.min_eigenvalue);
    } else {
        throw std::domain_error("unknown geometry check '" + check +
                                "' (expected duality, torsion or curvature)");
    }
    write_output(emit, doc.dump(2) + "\n");
    return 0;
}

// ---- reproduce -------------------------------------------------------------

int run_reproduce(int workers, const std::string& emit) {
    const std::vector<CheckResult> results = run_verification_suite(workers);
    std::ostringstream out;
    bool all_ok = true;
    std::size_t width = 0;
    for (const CheckResult& r : results)
        width = std::max(width, r.name.size());
    for (const CheckResult& r : results) {
        all_ok = all_ok && r.passed;
        out << (r.passed ? "PASS  " : "FAIL  ") << r.name
            << std::string(width - r.name.size() + 2, ' ') << r.detail << '\n';
    }
    out << (all_ok ? "all checks passed" : "some checks FAILED") << " ("
        << results.size() << " total)\n";
    std::cout << out.str();
    if (!emit.empty()) {
        json doc;
        doc["schema"] = 1;
        doc["tool"] = "dbar";
        doc["version"] = kToolVersion;
        doc["checks"] = json::array();
        for (const CheckResult& r : results)
            doc["checks"].push_back(json{{"name", r.name},
                                         {"passed", r.passed},
                                         {"detail", r.detail}});
        doc["all_passed"] = all_ok;
        write_output(emit, doc.dump(2) + "\n");
    }
    return all_ok ? 0 : 2;
}

OperatorKind parse_operator(const std::string& s) {
    if (s == "box0")
        return OperatorKind::Box0;
    if (s == "box1")
        return OperatorKind::Box1;
    throw std::domain_error("unknown operator '" + s + "' (expected box0 or box1)");
}

int default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

ModelSpec parse_model(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    std::map<std::string, std::string> kv;
    if (colon != std::string::npos) {
        std::stringstream rest(spec.substr(colon + 1));
        std::string item;
        while (std::getline(rest, item, ',')) {
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
                throw std::domain_error("model parameter '" + item + "' is not key=value");
            kv[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    auto take_int = [&kv](const std::string& key, int fallback) {
        const auto it = kv.find(key);
        if (it == kv.end())
            return fallback;
        const double v = parse_number(it->second, key);
        if (v != static_cast<int>(v))
            throw std::domain_error("model parameter " + key + " must be an integer");
        kv.erase(it);
        return static_cast<int>(v);
    };
    auto take_real = [&kv](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw std::domain_error("model parameter " + key + " is required");
        const double v = parse_number(it->second, key);
        kv.erase(it);
        return v;
    };
    ModelSpec model = ModelSpec::segal_bargmann(1);
    if (name == "segal-bargmann") {
        model = ModelSpec::segal_bargmann(take_int("n", 1));
    } else if (name == "hyperbolic") {
        model = ModelSpec::hyperbolic(take_int("n", 1), take_real("alpha"));
    } else if (name == "standard") {
        model = ModelSpec::standard(take_int("n", 1), take_real("gamma"));
    } else if (name == "cigar") {
        model = ModelSpec::cigar(take_real("alpha"));
    } else {
        throw std::domain_error("unknown model '" + name +
                                "' (expected segal-bargmann, hyperbolic, standard or cigar)");
    }
    if (!kv.empty())
        throw std::domain_error("unknown model parameter '" + kv.begin()->first + "' for " + name);
    return model;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"weighted Bergman spaces: norms, block Laplacians, canonical dbar solver, "
                 "geometry audits"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string model_spec, profile_spec, emit, eta_path;
    std::string op_name = "box1", format = "json", check = "duality";
    int degree = 0, m_max = 6, max_order = 8, nodes = 40, workers = default_workers(), n = 1;
    double epsilon = 0.0, sigma = 0.0, radius = std::numeric_limits<double>::infinity();

    CLI::App* norms = app.add_subcommand("norms", "basis norm table (CSV)");
    norms->add_option("--model", model_spec, "model spec, e.g. standard:n=2,gamma=1")->required();
    norms->add_option("--max-order", max_order, "largest |J| in the table")->check(CLI::Range(0, 64));
    norms->add_option("--nodes", nodes, "starting quadrature rule size")->check(CLI::Range(10, 200));
    norms->add_option("--emit", emit, "output file (default: stdout)");

    CLI::App* block = app.add_subcommand("block", "one degree block of the Laplacian (JSON)");
    block->add_option("--model", model_spec)->required();
    block->add_option("--degree", degree, "monomial degree m of the block")->required()->check(CLI::Range(0, 64));
    block->add_option("--operator", op_name, "box0 or box1");
    block->add_option("--nodes", nodes)->check(CLI::Range(10, 200));
    block->add_option("--emit", emit, "output file (default: stdout)");

    CLI::App* spec = app.add_subcommand("spectrum", "eigenvalues over all blocks up to --mmax");
    spec->add_option("--model", model_spec)->required();
    spec->add_option("--mmax", m_max, "largest degree block")->required()->check(CLI::Range(0, 64));
    spec->add_option("--operator", op_name, "box0 or box1");
    spec->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    spec->add_option("--workers", workers, "thread count (1 = serial)")->check(CLI::Range(1, 256));
    spec->add_option("--nodes", nodes)->check(CLI::Range(10, 200));
    spec->add_option("--emit", emit, "output file (default: stdout)");

    CLI::App* solve = app.add_subcommand("solve", "canonical solution of dbar f = eta");
    solve->add_option("--model", model_spec)->required();
    solve->add_option("--eta", eta_path, "JSON file: [{J:[..], k:1-based, re, im}, ...]")->required();
    solve->add_option("--nodes", nodes)->check(CLI::Range(10, 200));
    solve->add_option("--emit", emit, "output file (default: stdout)");

    CLI::App* geo = app.add_subcommand("geometry", "audit a radial metric/weight profile");
    CLI::Option* geo_model = geo->add_option("--model", model_spec, "built-in profile by model spec");
    geo->add_option("--profile", profile_spec,
                    "kahler:h=<expr>,psi=<expr> or conformal:phi=<expr>,psi=<expr>")
        ->excludes(geo_model);
    geo->add_option("--check", check, "duality, torsion or curvature");
    geo->add_option("--n", n, "complex dimension for --profile")->check(CLI::Range(1, 16));
    geo->add_option("--eps", epsilon, "curvature margin epsilon");
    geo->add_option("--sigma", sigma, "torsion coupling (<= 1 disables the term)");
    geo->add_option("--radius", radius, "sup of r = |z|^2 for --profile (default: unbounded)");
    geo->add_option("--emit", emit, "output file (default: stdout)");

    CLI::App* rep = app.add_subcommand("reproduce", "run the full verification suite");
    rep->add_option("--workers", workers)->check(CLI::Range(1, 256));
    rep->add_option("--emit", emit, "also write the table as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (norms->parsed())
            return run_norms(parse_model(model_spec), max_order, nodes, emit);
        if (block->parsed())
            return run_block(parse_model(model_spec), degree, parse_operator(op_name), nodes, emit);
        if (spec->parsed())
            return run_spectrum(parse_model(model_spec), m_max, parse_operator(op_name), workers,
                                nodes, format, emit);
        if (solve->parsed())
            return run_solve(parse_model(model_spec), eta_path, nodes, emit);
        if (geo->parsed()) {
            if (model_spec.empty() && profile_spec.empty())
                throw std::domain_error("geometry needs --model or --profile");
            return run_geometry(model_spec, profile_spec, check, n, epsilon, sigma, radius, emit);
        }
        if (rep->parsed())
            return run_reproduce(workers, emit);
    } catch (const io_error& e) {
        std::cerr << "dbar: " << e.what() << '\n';
        return 3;
    } catch (const accuracy_error& e) {
        std::cerr << "dbar: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "dbar: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "dbar: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "dbar: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

} // namespace dbar
