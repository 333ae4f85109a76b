#ifndef DBAR_SPECIAL_HPP
#define DBAR_SPECIAL_HPP

namespace dbar {

/// ln Gamma(x) for x > 0 (Lanczos approximation, g = 7, 9 terms;
/// reflection handles the 0 < x < 0.5 range).  Relative error below
/// 1e-13 on [0.5, 200].  Throws std::domain_error for x <= 0 or
/// non-finite x.
double ln_gamma(double x);

/// ln n! for integer n >= 0.
double ln_factorial(int n);

} // namespace dbar

#endif
