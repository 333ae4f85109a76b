#ifndef DBAR_MULTIINDEX_HPP
#define DBAR_MULTIINDEX_HPP

#include <compare>
#include <cstdint>
#include <vector>

namespace dbar {

/// Exponent vector J of a monomial z^J.  Immutable after construction.
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> exponents);
    static MultiIndex zeros(int n);

    int dim() const { return static_cast<int>(e_.size()); }
    int order() const;                 // |J| = sum of exponents
    int operator[](int k) const { return e_[static_cast<std::size_t>(k)]; }
    const std::vector<int>& exponents() const { return e_; }

    double log_factorial() const;      // ln J! = sum ln(j_i!)

    MultiIndex incremented(int k) const;   // J +_k 1
    MultiIndex decremented(int k) const;   // throws if entry k is zero

    auto operator<=>(const MultiIndex&) const = default;

private:
    std::vector<int> e_;
};

/// All J with dim n and |J| = m, first component descending, so that for
/// n=2, m=1 the order is (1,0), (0,1).  Count is C(m+n-1, n-1).
std::vector<MultiIndex> enumerate_multiindices(int n, int m);

/// Exact binomial coefficient as double (n up to ~60 stays exact).
double binomial(int n, int k);

} // namespace dbar

#endif
