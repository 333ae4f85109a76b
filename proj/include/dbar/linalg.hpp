#ifndef DBAR_LINALG_HPP
#define DBAR_LINALG_HPP

#include <vector>

namespace dbar {

/// Dense real symmetric matrix, row-major.  Symmetry is enforced at
/// construction: set() writes both (i,j) and (j,i).
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(int order);
    /// From full row-major data; throws if data is not symmetric within
    /// tol * max|entry| (entries are then symmetrized exactly).
    static SymmetricMatrix from_rows(int order, const std::vector<double>& data,
                                     double tol = 0.0);

    int order() const { return n_; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }
    void set(int i, int j, double v);

    double frobenius_norm() const;
    double trace() const;
    const std::vector<double>& data() const { return a_; }

private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(j);
    }
    int n_;
    std::vector<double> a_;
};

struct EighResult {
    std::vector<double> values;  // ascending
    std::vector<double> vectors; // row-major order x order; column i pairs with values[i]
};

/// Cyclic Jacobi eigensolver.  Off-diagonal Frobenius threshold
/// 1e-14 * ||M||_F, 100-sweep cap.  Eigenvectors orthonormal to ~1e-13.
/// Throws std::domain_error on non-finite entries.
EighResult eigh(const SymmetricMatrix& m);

/// Lower-triangular Cholesky factor of an SPD matrix (row-major full
/// storage with zeros above the diagonal).  Throws std::domain_error if
/// a pivot is not strictly positive.
std::vector<double> cholesky_lower(const SymmetricMatrix& m);

/// Solve L x = b (forward) and L^T x = b (backward) for lower-triangular L.
std::vector<double> solve_lower(const std::vector<double>& l, int n, std::vector<double> b);
std::vector<double> solve_lower_transposed(const std::vector<double>& l, int n, std::vector<double> b);

} // namespace dbar

#endif
