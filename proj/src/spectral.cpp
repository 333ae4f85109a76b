#include "dbar/spectral.hpp"

#include "dbar/norms.hpp"
#include "dbar/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <complex>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dbar {

namespace {

std::vector<EigenCluster> cluster(const std::vector<double>& values, int block_m) {
    std::vector<EigenCluster> out;
    for (double v : values) {
        if (!out.empty() && std::abs(v - out.back().value) <= 1e-8 * (1.0 + std::abs(v))) {
            // running mean keeps the cluster representative stable
            EigenCluster& c = out.back();
            c.value = (c.value * c.multiplicity + v) / (c.multiplicity + 1);
            c.multiplicity += 1;
        } else {
            out.push_back(EigenCluster{v, 1, block_m});
        }
    }
    return out;
}

std::string key_name(const FormKey& key) {
    std::ostringstream os;
    os << "z^(";
    for (int i = 0; i < key.J.dim(); ++i)
        os << (i ? "," : "") << key.J[i];
    os << ")";
    if (key.a >= 0)
        os << " dz^" << (key.a + 1);
    if (key.b >= 0)
        os << "^dz^" << (key.b + 1);
    return os.str();
}

} // namespace

SpectralReport spectrum(const ModelSpec& model, int m_max, OperatorKind op, int workers,
                        int nodes) {
    if (m_max < 0)
        throw std::domain_error("spectrum: m_max must be >= 0");
    if (workers < 1)
        throw std::domain_error("spectrum: workers must be >= 1");

    struct PerBlock {
        std::vector<double> values;
        std::pair<double, double> gersh;
        std::exception_ptr error;
    };
    std::vector<PerBlock> blocks(static_cast<std::size_t>(m_max) + 1);

    std::atomic<int> next{0};
    auto work = [&]() {
        for (int m = next.fetch_add(1); m <= m_max; m = next.fetch_add(1)) {
            PerBlock& b = blocks[static_cast<std::size_t>(m)];
            try {
                const BlockOperator block = assemble_block(model, m, op, nodes);
                b.gersh = block.gershgorin();
                b.values = eigh(block.matrix).values;
            } catch (...) {
                b.error = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < std::min(workers, m_max + 1); ++w)
            pool.emplace_back(work);
        for (std::thread& t : pool)
            t.join();
    }

    SpectralReport report{model, m_max, op, {}, 0.0, {}};
    double lmin = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= m_max; ++m) {
        const PerBlock& b = blocks[static_cast<std::size_t>(m)];
        if (b.error)
            std::rethrow_exception(b.error);
        for (const EigenCluster& c : cluster(b.values, m))
            report.eigenvalues.push_back(c);
        if (!b.values.empty())
            lmin = std::min(lmin, b.values.front());
        report.gershgorin.push_back(b.gersh);
    }
    report.lambda_min = lmin;
    return report;
}

FormCoefficients neumann_apply(const ModelSpec& model, const FormCoefficients& eta,
                               int nodes) {
    const int p = eta.degree_p();
    if (p > 1)
        throw std::domain_error("neumann_apply: degree must be 0 or 1");
    const OperatorKind op = p == 0 ? OperatorKind::Box0 : OperatorKind::Box1;

    // group coefficients by monomial degree; blocks are invariant
    std::map<int, FormCoefficients::Table> by_degree;
    for (const auto& [key, c] : eta.table())
        by_degree[key.J.order()].emplace(key, c);

    FormCoefficients out(model, p);
    for (const auto& [m, entries] : by_degree) {
        const BlockOperator block = assemble_block(model, m, op, nodes);
        const int order = block.matrix.order();
        std::map<FormKey, int> index;
        for (int i = 0; i < order; ++i)
            index.emplace(block.basis[static_cast<std::size_t>(i)], i);

        // coordinates in the monomial basis
        std::vector<std::complex<double>> c(static_cast<std::size_t>(order), 0.0);
        for (const auto& [key, v] : entries)
            c[static_cast<std::size_t>(index.at(key))] = v;

        // orthonormal coordinates y: diagonal scaling, or y = L^T c for
        // the non-orthogonal hyperbolic monomials
        std::vector<std::complex<double>> y(static_cast<std::size_t>(order), 0.0);
        std::vector<double> l;        // hyperbolic Cholesky factor
        std::vector<double> logd;     // diagonal log norms
        const bool diagonal = model.kind != ModelKind::HyperbolicExponential;
        if (diagonal) {
            const NormTable table(model, p, m, nodes);
            logd.resize(static_cast<std::size_t>(order));
            for (int i = 0; i < order; ++i) {
                logd[static_cast<std::size_t>(i)] =
                    0.5 * table.log_squared_norm(block.basis[static_cast<std::size_t>(i)]);
                y[static_cast<std::size_t>(i)] =
                    c[static_cast<std::size_t>(i)] * std::exp(logd[static_cast<std::size_t>(i)]);
            }
        } else {
            l = cholesky_lower(gram_block(model, m, p, nodes));
            for (int i = 0; i < order; ++i)
                for (int k = 0; k <= i; ++k)
                    y[static_cast<std::size_t>(k)] +=
                        l[static_cast<std::size_t>(i) * order + k] * c[static_cast<std::size_t>(i)];
        }

        // invert through the eigendecomposition
        const EighResult e = eigh(block.matrix);
        const double scale = std::max(std::abs(e.values.back()), 1.0);
        std::vector<std::complex<double>> yhat(static_cast<std::size_t>(order), 0.0);
        for (int k = 0; k < order; ++k) {
            if (std::abs(e.values[static_cast<std::size_t>(k)]) <= 1e-12 * scale) {
                // name the dominant basis monomial of the kernel vector
                int arg = 0;
                for (int i = 1; i < order; ++i)
                    if (std::abs(e.vectors[static_cast<std::size_t>(i) * order + k]) >
                        std::abs(e.vectors[static_cast<std::size_t>(arg) * order + k]))
                        arg = i;
                throw std::runtime_error(
                    "neumann_apply: singular block at degree " + std::to_string(m) +
                    " (kernel component " + key_name(block.basis[static_cast<std::size_t>(arg)]) + ")");
            }
            std::complex<double> proj = 0.0;
            for (int i = 0; i < order; ++i)
                proj += e.vectors[static_cast<std::size_t>(i) * order + k] * y[static_cast<std::size_t>(i)];
            proj /= e.values[static_cast<std::size_t>(k)];
            for (int i = 0; i < order; ++i)
                yhat[static_cast<std::size_t>(i)] +=
                    proj * e.vectors[static_cast<std::size_t>(i) * order + k];
        }

        // back to monomial coordinates
        std::vector<std::complex<double>> chat(static_cast<std::size_t>(order), 0.0);
        if (diagonal) {
            for (int i = 0; i < order; ++i)
                chat[static_cast<std::size_t>(i)] =
                    yhat[static_cast<std::size_t>(i)] * std::exp(-logd[static_cast<std::size_t>(i)]);
        } else {
            // solve L^T chat = yhat
            for (int i = order - 1; i >= 0; --i) {
                std::complex<double> s = yhat[static_cast<std::size_t>(i)];
                for (int k = i + 1; k < order; ++k)
                    s -= l[static_cast<std::size_t>(k) * order + i] * chat[static_cast<std::size_t>(k)];
                chat[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * order + i];
            }
        }
        for (int i = 0; i < order; ++i)
            if (chat[static_cast<std::size_t>(i)] != std::complex<double>(0.0, 0.0)) {
                const FormKey& key = block.basis[static_cast<std::size_t>(i)];
                out.add(key.J, key.a, key.b, chat[static_cast<std::size_t>(i)]);
            }
    }
    return out.pruned(1e-14);
}

SolveReport solve_dbar(const ModelSpec& model, const FormCoefficients& eta, int nodes) {
    if (eta.degree_p() != 1)
        throw std::domain_error("solve_dbar: datum must be a (1,0)-form");
    if (eta.empty()) {
        return SolveReport{eta, FormCoefficients(model, 0), 0.0, 0.0, 0.0};
    }
    if (model.n >= 2) {
        const FormCoefficients deta = dbar(eta);
        const double defect = deta.max_abs_coefficient();
        if (defect > 1e-12 * (1.0 + eta.max_abs_coefficient())) {
            const FormKey& key = deta.pruned(0.5).table().begin()->first;
            throw std::domain_error("solve_dbar: datum is not closed (d_" +
                                    std::to_string(key.a + 1) + " eta_" +
                                    std::to_string(key.b + 1) + " != d_" +
                                    std::to_string(key.b + 1) + " eta_" +
                                    std::to_string(key.a + 1) + " at " + key_name(FormKey{key.J, -1, -1}) + ")");
        }
    }

    SolveReport report{eta, dbar_adjoint(neumann_apply(model, eta, nodes)), 0.0, 0.0, 0.0};
    report.residual_dbar = (dbar(report.f) - eta).max_abs_coefficient();

    const double eta2 = inner_product(eta, eta, nodes).real();
    const double f2 = report.f.empty() ? 0.0 : inner_product(report.f, report.f, nodes).real();
    report.norm_ratio = eta2 > 0.0 ? duality_constant(model) * f2 / eta2 : 0.0;

    if (f2 > 0.0) {
        FormCoefficients one(model, 0);
        one.add_scalar(MultiIndex::zeros(model.n), 1.0);
        report.orthogonality_defect =
            std::abs(inner_product(report.f, one, nodes)) / std::sqrt(f2);
    }
    return report;
}

UnboundednessReport unboundedness_demo(const ModelSpec& model, int N, int nodes) {
    if (model.kind != ModelKind::HyperbolicExponential || model.n != 1)
        throw std::domain_error("unboundedness_demo: requires the n=1 exponential weight");
    if (N < 10)
        throw std::domain_error("unboundedness_demo: N must be >= 10");
    const double a = model.alpha;

    // quadrature ratio d_k^2 / c_{k+1}^2; beyond k = 40 the Laguerre peak
    // escapes any fixed rule, and the proven closed form takes over
    auto ratio = [&](int k) {
        if (k > 40)
            return a / (k + 1.0);
        const MultiIndex j(std::vector<int>{k});
        const double d2 = norm_quadrature(model, 1, j, 0, nodes);
        const double c2 = norm_quadrature(model, 0, j.incremented(0), -1, nodes);
        return d2 / c2;
    };

    UnboundednessReport report;
    report.N = N;
    for (int k = 1; k <= N; ++k) {
        const double r = ratio(k);
        report.sum_dbar += r;
        report.sum_adjoint += ratio(k - 1);
        report.sum_dbar_closed += a / (k + 1.0);
        report.sum_adjoint_closed += a / k;
        if (k <= 30)
            report.max_ratio_rel_diff =
                std::max(report.max_ratio_rel_diff, std::abs(r - a / (k + 1.0)) * (k + 1.0) / a);
    }
    return report;
}

} // namespace dbar
