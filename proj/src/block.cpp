#include "dbar/block.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace dbar {

std::pair<double, double> BlockOperator::gershgorin() const {
    const int n = matrix.order();
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        for (int j = 0; j < n; ++j)
            if (j != i)
                r += std::abs(matrix(i, j));
        lo = std::min(lo, matrix(i, i) - r);
        hi = std::max(hi, matrix(i, i) + r);
    }
    return {lo, hi};
}

namespace {

FormCoefficients monomial_form(const ModelSpec& model, int p, const FormKey& key) {
    FormCoefficients u(model, p);
    u.add(key.J, key.a, key.b, 1.0);
    return u;
}

} // namespace

BlockOperator assemble_block(const ModelSpec& model, int m, OperatorKind op, int nodes) {
    if (m < 0)
        throw std::domain_error("assemble_block: m must be >= 0");
    const int p = op == OperatorKind::Box0 ? 0 : 1;
    if (model.kind == ModelKind::Cigar && !(model.alpha - p - m > 0.0))
        throw std::domain_error("assemble_block: cigar block not square-integrable (need m < alpha - p)");
    const std::vector<FormKey> basis = block_basis(model, m, p);
    const int order = static_cast<int>(basis.size());

    std::map<FormKey, int> index;
    for (int i = 0; i < order; ++i)
        index.emplace(basis[static_cast<std::size_t>(i)], i);

    // monomial action matrix: op(b_j) = sum_i C_ij b_i
    std::vector<double> c(static_cast<std::size_t>(order) * order, 0.0);
    for (int j = 0; j < order; ++j) {
        const FormCoefficients in = monomial_form(model, p, basis[static_cast<std::size_t>(j)]);
        const FormCoefficients out = op == OperatorKind::Box0 ? box0_apply(in) : box1_apply(in);
        for (const auto& [key, coeff] : out.table()) {
            if (std::abs(coeff.imag()) > 1e-14 * std::abs(coeff))
                throw std::logic_error("assemble_block: non-real monomial action");
            auto it = index.find(key);
            if (it == index.end())
                throw std::logic_error("assemble_block: operator left the degree block");
            c[static_cast<std::size_t>(it->second) * order + j] = coeff.real();
        }
    }

    std::vector<double> mdata(static_cast<std::size_t>(order) * order, 0.0);
    if (model.kind == ModelKind::HyperbolicExponential) {
        // non-orthogonal monomials: M = L^{-1} (G C) L^{-T}, G = L L^T
        const SymmetricMatrix g = gram_block(model, m, p, nodes);
        const std::vector<double> l = cholesky_lower(g);
        std::vector<double> gc(static_cast<std::size_t>(order) * order, 0.0);
        for (int i = 0; i < order; ++i)
            for (int j = 0; j < order; ++j) {
                double s = 0.0;
                for (int k = 0; k < order; ++k)
                    s += g(i, k) * c[static_cast<std::size_t>(k) * order + j];
                gc[static_cast<std::size_t>(i) * order + j] = s;
            }
        // forward-solve columns: B = L^{-1} (G C)
        for (int j = 0; j < order; ++j) {
            std::vector<double> col(static_cast<std::size_t>(order));
            for (int i = 0; i < order; ++i)
                col[static_cast<std::size_t>(i)] = gc[static_cast<std::size_t>(i) * order + j];
            col = solve_lower(l, order, std::move(col));
            for (int i = 0; i < order; ++i)
                gc[static_cast<std::size_t>(i) * order + j] = col[static_cast<std::size_t>(i)];
        }
        // M = B L^{-T}: forward-solve the rows of B
        for (int i = 0; i < order; ++i) {
            std::vector<double> row(static_cast<std::size_t>(order));
            for (int j = 0; j < order; ++j)
                row[static_cast<std::size_t>(j)] = gc[static_cast<std::size_t>(i) * order + j];
            row = solve_lower(l, order, std::move(row));
            for (int j = 0; j < order; ++j)
                mdata[static_cast<std::size_t>(i) * order + j] = row[static_cast<std::size_t>(j)];
        }
    } else {
        // diagonal metric: conjugate by the norm scaling in log space
        const NormTable table(model, p, m, nodes);
        std::vector<double> logd(static_cast<std::size_t>(order));
        for (int i = 0; i < order; ++i)
            logd[static_cast<std::size_t>(i)] =
                0.5 * table.log_squared_norm(basis[static_cast<std::size_t>(i)]);
        for (int i = 0; i < order; ++i)
            for (int j = 0; j < order; ++j) {
                const double v = c[static_cast<std::size_t>(i) * order + j];
                if (v != 0.0)
                    mdata[static_cast<std::size_t>(i) * order + j] =
                        v * std::exp(logd[static_cast<std::size_t>(i)] -
                                     logd[static_cast<std::size_t>(j)]);
            }
    }

    SymmetricMatrix sym = SymmetricMatrix::from_rows(order, mdata, 1e-12);
    return BlockOperator{model, m, op, basis, std::move(sym)};
}

} // namespace dbar
