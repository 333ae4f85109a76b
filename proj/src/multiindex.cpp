#include "dbar/multiindex.hpp"

#include "dbar/special.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace dbar {

MultiIndex::MultiIndex(std::vector<int> exponents) : e_(std::move(exponents)) {
    if (e_.empty())
        throw std::domain_error("MultiIndex: dimension must be >= 1");
    for (int v : e_)
        if (v < 0)
            throw std::domain_error("MultiIndex: negative exponent");
}

MultiIndex MultiIndex::zeros(int n) {
    if (n < 1)
        throw std::domain_error("MultiIndex: dimension must be >= 1");
    return MultiIndex(std::vector<int>(static_cast<std::size_t>(n), 0));
}

int MultiIndex::order() const {
    return std::accumulate(e_.begin(), e_.end(), 0);
}

double MultiIndex::log_factorial() const {
    double s = 0.0;
    for (int v : e_)
        s += ln_factorial(v);
    return s;
}

MultiIndex MultiIndex::incremented(int k) const {
    auto e = e_;
    e.at(static_cast<std::size_t>(k)) += 1;
    return MultiIndex(std::move(e));
}

MultiIndex MultiIndex::decremented(int k) const {
    auto e = e_;
    int& v = e.at(static_cast<std::size_t>(k));
    if (v == 0)
        throw std::domain_error("MultiIndex: cannot decrement zero entry");
    v -= 1;
    return MultiIndex(std::move(e));
}

namespace {

void enumerate_rec(int n, int m, std::vector<int>& cur, std::vector<MultiIndex>& out) {
    if (static_cast<int>(cur.size()) == n - 1) {
        cur.push_back(m);
        out.emplace_back(cur);
        cur.pop_back();
        return;
    }
    for (int j = m; j >= 0; --j) {
        cur.push_back(j);
        enumerate_rec(n, m - j, cur, out);
        cur.pop_back();
    }
}

} // namespace

std::vector<MultiIndex> enumerate_multiindices(int n, int m) {
    if (n < 1)
        throw std::domain_error("enumerate_multiindices: n must be >= 1");
    if (m < 0)
        throw std::domain_error("enumerate_multiindices: m must be >= 0");
    std::vector<MultiIndex> out;
    std::vector<int> cur;
    enumerate_rec(n, m, cur, out);
    return out;
}

double binomial(int n, int k) {
    if (k < 0 || k > n)
        return 0.0;
    if (k > n - k)
        k = n - k;
    double r = 1.0;
    for (int i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return std::round(r);
}

} // namespace dbar
