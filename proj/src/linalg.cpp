#include "dbar/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dbar {

SymmetricMatrix::SymmetricMatrix(int order)
    : n_(order), a_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), 0.0) {
    if (order < 1)
        throw std::domain_error("SymmetricMatrix: order must be >= 1");
}

SymmetricMatrix SymmetricMatrix::from_rows(int order, const std::vector<double>& data, double tol) {
    if (static_cast<std::size_t>(order) * static_cast<std::size_t>(order) != data.size())
        throw std::domain_error("SymmetricMatrix: data size mismatch");
    double amax = 0.0;
    for (double v : data)
        amax = std::max(amax, std::abs(v));
    SymmetricMatrix m(order);
    for (int i = 0; i < order; ++i)
        for (int j = i; j < order; ++j) {
            const double a = data[static_cast<std::size_t>(i) * order + j];
            const double b = data[static_cast<std::size_t>(j) * order + i];
            if (std::abs(a - b) > tol * std::max(amax, 1.0))
                throw std::domain_error("SymmetricMatrix: input not symmetric");
            m.set(i, j, 0.5 * (a + b));
        }
    return m;
}

void SymmetricMatrix::set(int i, int j, double v) {
    a_.at(idx(i, j)) = v;
    a_.at(idx(j, i)) = v;
}

double SymmetricMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_)
        s += v * v;
    return std::sqrt(s);
}

double SymmetricMatrix::trace() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        s += (*this)(i, i);
    return s;
}

namespace {

double offdiag_norm(const std::vector<double>& a, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) {
                const double v = a[static_cast<std::size_t>(i) * n + j];
                s += v * v;
            }
    return std::sqrt(s);
}

} // namespace

EighResult eigh(const SymmetricMatrix& m) {
    const int n = m.order();
    std::vector<double> a = m.data();
    for (double v : a)
        if (!std::isfinite(v))
            throw std::domain_error("eigh: non-finite matrix entry");

    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        v[static_cast<std::size_t>(i) * n + i] = 1.0;

    const double norm = m.frobenius_norm();
    const double stop = 1e-14 * std::max(norm, 1e-300);
    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto vat = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

    for (int sweep = 0; sweep < 100 && offdiag_norm(a, n) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (std::abs(apq) <= 1e-300)
                    continue;
                const double app = at(p, p), aqq = at(q, q);
                const double theta = 0.5 * (aqq - app) / apq;
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = at(k, p), akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = at(p, k), aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = vat(k, p), vkq = vat(k, q);
                    vat(k, p) = c * vkp - s * vkq;
                    vat(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(),
              [&](int i, int j) { return at(i, i) < at(j, j); });

    EighResult res;
    res.values.resize(static_cast<std::size_t>(n));
    res.vectors.resize(static_cast<std::size_t>(n) * n);
    for (int col = 0; col < n; ++col) {
        res.values[static_cast<std::size_t>(col)] = at(perm[static_cast<std::size_t>(col)], perm[static_cast<std::size_t>(col)]);
        for (int row = 0; row < n; ++row)
            res.vectors[static_cast<std::size_t>(row) * n + col] = vat(row, perm[static_cast<std::size_t>(col)]);
    }
    return res;
}

std::vector<double> cholesky_lower(const SymmetricMatrix& m) {
    const int n = m.order();
    std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
    auto lat = [&](int i, int j) -> double& { return l[static_cast<std::size_t>(i) * n + j]; };
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k)
                s -= lat(i, k) * lat(j, k);
            if (i == j) {
                if (s <= 0.0)
                    throw std::domain_error("cholesky_lower: matrix not positive definite");
                lat(i, j) = std::sqrt(s);
            } else {
                lat(i, j) = s / lat(j, j);
            }
        }
    }
    return l;
}

std::vector<double> solve_lower(const std::vector<double>& l, int n, std::vector<double> b) {
    for (int i = 0; i < n; ++i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = 0; k < i; ++k)
            s -= l[static_cast<std::size_t>(i) * n + k] * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * n + i];
    }
    return b;
}

std::vector<double> solve_lower_transposed(const std::vector<double>& l, int n, std::vector<double> b) {
    for (int i = n - 1; i >= 0; --i) {
        double s = b[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < n; ++k)
            s -= l[static_cast<std::size_t>(k) * n + i] * b[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(i)] = s / l[static_cast<std::size_t>(i) * n + i];
    }
    return b;
}

} // namespace dbar
