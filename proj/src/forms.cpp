#include "dbar/forms.hpp"

#include <cmath>
#include <stdexcept>

namespace dbar {

namespace {

void validate_components(const ModelSpec& model, int p, const MultiIndex& j, int a, int b) {
    if (j.dim() != model.n)
        throw std::domain_error("FormCoefficients: multi-index dimension mismatch");
    switch (p) {
    case 0:
        if (a != -1 || b != -1)
            throw std::domain_error("FormCoefficients: scalar entry carries component indices");
        return;
    case 1:
        if (a < 0 || a >= model.n || b != -1)
            throw std::domain_error("FormCoefficients: one-form component out of range");
        return;
    case 2:
        if (!(0 <= a && a < b && b < model.n))
            throw std::domain_error("FormCoefficients: two-form components must satisfy 0 <= a < b < n");
        return;
    default:
        throw std::domain_error("FormCoefficients: degree must be 0, 1 or 2");
    }
}

/// Multiplication constant of the adjoint acting on (p,0)-forms.
double adjoint_constant(const ModelSpec& model, int p) {
    if (p == 1)
        return duality_constant(model);
    // p == 2
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        return 1.0;
    case ModelKind::HyperbolicExponential:
        return model.alpha;
    case ModelKind::ConformalStandard:
        return model.gamma + 1.0;
    case ModelKind::Cigar:
        throw std::domain_error("adjoint_constant: cigar model has no (2,0)-forms");
    }
    throw std::logic_error("adjoint_constant: unreachable");
}

} // namespace

FormCoefficients::FormCoefficients(ModelSpec model, int p) : model_(model), p_(p) {
    if (p < 0 || p > 2)
        throw std::domain_error("FormCoefficients: degree must be 0, 1 or 2");
    if (p == 2 && model.n < 2)
        throw std::domain_error("FormCoefficients: (2,0)-forms need n >= 2");
}

void FormCoefficients::add(const MultiIndex& j, int a, int b, std::complex<double> c) {
    validate_components(model_, p_, j, a, b);
    if (c == std::complex<double>(0.0, 0.0))
        return;
    auto [it, inserted] = table_.try_emplace(FormKey{j, a, b}, c);
    if (!inserted) {
        it->second += c;
        if (it->second == std::complex<double>(0.0, 0.0))
            table_.erase(it);
    }
}

void FormCoefficients::add_scalar(const MultiIndex& j, std::complex<double> c) {
    add(j, -1, -1, c);
}

void FormCoefficients::add_one_form(const MultiIndex& j, int k, std::complex<double> c) {
    add(j, k, -1, c);
}

std::complex<double> FormCoefficients::coefficient(const FormKey& key) const {
    auto it = table_.find(key);
    return it == table_.end() ? std::complex<double>(0.0, 0.0) : it->second;
}

double FormCoefficients::max_abs_coefficient() const {
    double m = 0.0;
    for (const auto& [key, c] : table_)
        m = std::max(m, std::abs(c));
    return m;
}

int FormCoefficients::max_order() const {
    int m = -1;
    for (const auto& [key, c] : table_)
        m = std::max(m, key.J.order());
    return m;
}

FormCoefficients FormCoefficients::pruned(double tol) const {
    const double cut = tol * max_abs_coefficient();
    FormCoefficients out(model_, p_);
    for (const auto& [key, c] : table_)
        if (std::abs(c) > cut)
            out.add(key.J, key.a, key.b, c);
    return out;
}

FormCoefficients operator+(const FormCoefficients& x, const FormCoefficients& y) {
    if (x.p_ != y.p_ || x.model_.kind != y.model_.kind || x.model_.n != y.model_.n)
        throw std::domain_error("FormCoefficients: cannot add forms of different type");
    FormCoefficients out = x;
    for (const auto& [key, c] : y.table_)
        out.add(key.J, key.a, key.b, c);
    return out;
}

FormCoefficients operator-(const FormCoefficients& x, const FormCoefficients& y) {
    return x + y.scaled(-1.0);
}

FormCoefficients FormCoefficients::scaled(std::complex<double> s) const {
    FormCoefficients out(model_, p_);
    for (const auto& [key, c] : table_)
        out.add(key.J, key.a, key.b, s * c);
    return out;
}

FormCoefficients dbar(const FormCoefficients& u) {
    const int p = u.degree_p();
    if (p == 0) {
        FormCoefficients out(u.model(), 1);
        for (const auto& [key, c] : u.table())
            for (int j = 0; j < u.model().n; ++j)
                if (key.J[j] > 0)
                    out.add_one_form(key.J.decremented(j), j, static_cast<double>(key.J[j]) * c);
        return out;
    }
    if (p == 1) {
        // (dbar u)_{ab} = d_a u_b - d_b u_a for a < b
        FormCoefficients out(u.model(), 2);
        for (const auto& [key, c] : u.table()) {
            const int k = key.a;
            for (int j = 0; j < u.model().n; ++j) {
                if (j == k || key.J[j] == 0)
                    continue;
                const std::complex<double> d = static_cast<double>(key.J[j]) * c;
                if (j < k)
                    out.add(key.J.decremented(j), j, k, d);
                else
                    out.add(key.J.decremented(j), k, j, -d);
            }
        }
        return out;
    }
    throw std::domain_error("dbar: top-degree form");
}

FormCoefficients dbar_adjoint(const FormCoefficients& u) {
    const int p = u.degree_p();
    if (p == 0)
        throw std::domain_error("dbar_adjoint: degree-zero form");
    const double c = adjoint_constant(u.model(), p);
    FormCoefficients out(u.model(), p - 1);
    if (p == 1) {
        for (const auto& [key, v] : u.table())
            out.add_scalar(key.J.incremented(key.a), c * v);
        return out;
    }
    // p == 2: (adjoint v)_s = c sum_r z^r v_{rs}, with v_{ba} = -v_{ab}
    for (const auto& [key, v] : u.table()) {
        out.add_one_form(key.J.incremented(key.a), key.b, c * v);
        out.add_one_form(key.J.incremented(key.b), key.a, -(c * v));
    }
    return out;
}

FormCoefficients box1_apply(const FormCoefficients& u) {
    if (u.degree_p() != 1)
        throw std::domain_error("box1_apply: expects a (1,0)-form");
    const ModelSpec& model = u.model();
    FormCoefficients out(model, 1);
    switch (model.kind) {
    case ModelKind::SegalBargmann:
    case ModelKind::HyperbolicExponential:
    case ModelKind::Cigar: {
        // scalar alpha (1 + |J|) on monomial coefficients (alpha = 1 flat)
        const double c = duality_constant(model);
        for (const auto& [key, v] : u.table())
            out.add(key.J, key.a, key.b, c * (1.0 + key.J.order()) * v);
        return out;
    }
    case ModelKind::ConformalStandard: {
        // gamma u_k + (1+gamma) sum_j z^j d_j u_k - sum_j z^j d_k u_j
        const double g = model.gamma;
        for (const auto& [key, v] : u.table()) {
            out.add(key.J, key.a, key.b, (g + (1.0 + g) * key.J.order()) * v);
            for (int k = 0; k < model.n; ++k)
                if (key.J[k] > 0)
                    out.add_one_form(key.J.decremented(k).incremented(key.a), k,
                                     -static_cast<double>(key.J[k]) * v);
        }
        return out;
    }
    }
    throw std::logic_error("box1_apply: unreachable");
}

FormCoefficients box0_apply(const FormCoefficients& f) {
    if (f.degree_p() != 0)
        throw std::domain_error("box0_apply: expects a function");
    // adjoint(dbar f) = c sum_j z^j d_j f = c |J| f on monomials
    const double c = duality_constant(f.model());
    FormCoefficients out(f.model(), 0);
    for (const auto& [key, v] : f.table())
        out.add_scalar(key.J, c * key.J.order() * v);
    return out;
}

} // namespace dbar
