#ifndef DBAR_SPECTRAL_HPP
#define DBAR_SPECTRAL_HPP

#include "dbar/block.hpp"
#include "dbar/forms.hpp"
#include "dbar/model.hpp"

#include <utility>
#include <vector>

namespace dbar {

struct EigenCluster {
    double value = 0.0;
    int multiplicity = 0;
    int block_m = 0; // degree block of origin
};

struct SpectralReport {
    ModelSpec model;
    int m_max = 0;
    OperatorKind op = OperatorKind::Box1;
    std::vector<EigenCluster> eigenvalues;            // ordered by block, then value
    double lambda_min = 0.0;
    std::vector<std::pair<double, double>> gershgorin; // per block 0..m_max
};

/// Eigenvalues of the chosen Laplacian on all degree blocks up to m_max.
/// Blocks are independent, so the truncation is exact per block; they are
/// processed by a work pool of `workers` threads and merged in block order.
/// Within a block, eigenvalues closer than 1e-8 * (1 + |lambda|) are
/// clustered into one entry with a multiplicity count.
SpectralReport spectrum(const ModelSpec& model, int m_max,
                        OperatorKind op = OperatorKind::Box1, int workers = 1,
                        int nodes = 40);

/// Apply the inverse of the degree-matching Laplacian (the Neumann
/// operator for p=1) blockwise via the eigendecomposition.  Throws a
/// runtime error naming the kernel component if a block eigenvalue
/// vanishes (e.g. the constants under the degree-0 cigar Laplacian).
FormCoefficients neumann_apply(const ModelSpec& model, const FormCoefficients& eta,
                               int nodes = 40);

struct SolveReport {
    FormCoefficients eta;          // input datum
    FormCoefficients f;            // canonical solution of dbar f = eta
    double residual_dbar = 0.0;    // coefficientwise max of dbar f - eta
    double norm_ratio = 0.0;       // c * ||f||^2 / ||eta||^2, sharp constant c
    double orthogonality_defect = 0.0; // |<f, 1>| / ||f||
};

/// Canonical solution f = adjoint(N eta) of dbar f = eta with the sharp
/// norm estimate.  Requires dbar(eta) = 0; the violation error names the
/// offending coefficient pair.
SolveReport solve_dbar(const ModelSpec& model, const FormCoefficients& eta,
                       int nodes = 40);

struct UnboundednessReport {
    int N = 0;
    double sum_dbar = 0.0;           // S_N = sum_{k<=N} d_k^2 / c_{k+1}^2
    double sum_adjoint = 0.0;        // sum_{k<=N} d_{k-1}^2 / c_k^2
    double sum_dbar_closed = 0.0;    // sum alpha/(k+1)
    double sum_adjoint_closed = 0.0; // sum alpha/k
    double max_ratio_rel_diff = 0.0; // quadrature ratio vs alpha/(k+1), k <= 30
};

/// Divergent partial sums demonstrating unboundedness of dbar and its
/// adjoint on the n=1 exponential-weight space.  Ratios come from
/// quadrature norms for k <= 40 and from the proven closed form beyond
/// (the quadrature peak moves outside any fixed Gauss-Laguerre rule).
UnboundednessReport unboundedness_demo(const ModelSpec& model, int N, int nodes = 40);

} // namespace dbar

#endif
