#include "dbar/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dbar {

ModelSpec ModelSpec::segal_bargmann(int n) {
    if (n < 1)
        throw std::domain_error("segal_bargmann: n must be >= 1");
    return ModelSpec{ModelKind::SegalBargmann, n, 0.0, 0.0};
}

ModelSpec ModelSpec::hyperbolic(int n, double alpha) {
    if (n < 1)
        throw std::domain_error("hyperbolic: n must be >= 1");
    if (!(alpha > 0.0))
        throw std::domain_error("hyperbolic: alpha > 0 required");
    return ModelSpec{ModelKind::HyperbolicExponential, n, alpha, 0.0};
}

ModelSpec ModelSpec::standard(int n, double gamma) {
    if (n < 1)
        throw std::domain_error("standard: n must be >= 1");
    if (!(gamma > 0.0))
        throw std::domain_error("standard: gamma > 0 required");
    // the internal weight exponent; gamma round-trips exactly
    const double alpha = 1.0 - n - gamma;
    return ModelSpec{ModelKind::ConformalStandard, n, alpha, gamma};
}

ModelSpec ModelSpec::cigar(double alpha) {
    if (!(alpha >= 2.0))
        throw std::domain_error("cigar: alpha >= 2 required for a nontrivial Bergman space");
    return ModelSpec{ModelKind::Cigar, 1, alpha, 0.0};
}

std::string ModelSpec::name() const {
    std::ostringstream os;
    switch (kind) {
    case ModelKind::SegalBargmann:
        os << "segal-bargmann:n=" << n;
        break;
    case ModelKind::HyperbolicExponential:
        os << "hyperbolic:n=" << n << ",alpha=" << alpha;
        break;
    case ModelKind::ConformalStandard:
        os << "standard:n=" << n << ",gamma=" << gamma;
        break;
    case ModelKind::Cigar:
        os << "cigar:alpha=" << alpha;
        break;
    }
    return os.str();
}

double duality_constant(const ModelSpec& model) {
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        return 1.0;
    case ModelKind::HyperbolicExponential:
        return model.alpha;
    case ModelKind::ConformalStandard:
        return model.gamma; // = 1 - n - alpha
    case ModelKind::Cigar:
        return model.alpha;
    }
    throw std::logic_error("duality_constant: unreachable");
}

namespace {

void check_domain(const ModelSpec& model, double t) {
    if (!std::isfinite(t) || t < 0.0)
        throw std::domain_error("radial argument must be finite and >= 0");
    if (model.ball_domain() && t >= 1.0)
        throw std::domain_error("radial argument must lie in [0,1) for ball models");
}

} // namespace

double radial_weight_density(const ModelSpec& model, double t) {
    check_domain(model, t);
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        return std::exp(-t);
    case ModelKind::HyperbolicExponential:
        return std::pow(1.0 - t, -model.n - 1.0) * std::exp(-model.alpha / (1.0 - t));
    case ModelKind::ConformalStandard:
        return std::pow(1.0 - t, model.gamma - 1.0);
    case ModelKind::Cigar:
        return std::pow(1.0 + t, -(model.alpha + 1.0));
    }
    throw std::logic_error("radial_weight_density: unreachable");
}

double metric_component_scale(const ModelSpec& model, double t, int p) {
    check_domain(model, t);
    if (p < 0 || p > 2)
        throw std::domain_error("metric_component_scale: p must be 0, 1 or 2");
    switch (model.kind) {
    case ModelKind::SegalBargmann:
        return 1.0;
    case ModelKind::HyperbolicExponential:
        // delta part of h^{jk} = (1-t)(delta_{jk} - z^j conj(z^k))
        return std::pow(1.0 - t, p);
    case ModelKind::ConformalStandard:
        return std::pow(1.0 - t, p);
    case ModelKind::Cigar:
        if (p == 2)
            throw std::domain_error("metric_component_scale: cigar model has no (2,0)-forms");
        return std::pow(1.0 + t, p);
    }
    throw std::logic_error("metric_component_scale: unreachable");
}

} // namespace dbar
