#include "dbar/special.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace dbar {

namespace {

// Lanczos coefficients for g = 7, 9 terms.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

constexpr double kHalfLogTwoPi = 0.91893853320467274178; // ln(2*pi)/2

double lanczos_ln_gamma(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double sum = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i)
        sum += kLanczos[i] / (z + static_cast<double>(i));
    const double base = z + 7.5;
    return kHalfLogTwoPi + (z + 0.5) * std::log(base) - base + std::log(sum);
}

} // namespace

double ln_gamma(double x) {
    if (!std::isfinite(x) || x <= 0.0)
        throw std::domain_error("ln_gamma: argument must be finite and positive");
    if (x < 0.5) {
        // Gamma(x) Gamma(1-x) = pi / sin(pi x)
        return std::log(M_PI / std::sin(M_PI * x)) - lanczos_ln_gamma(1.0 - x);
    }
    return lanczos_ln_gamma(x);
}

double ln_factorial(int n) {
    if (n < 0)
        throw std::domain_error("ln_factorial: negative argument");
    return ln_gamma(static_cast<double>(n) + 1.0);
}

} // namespace dbar
