#ifndef DBAR_BLOCK_HPP
#define DBAR_BLOCK_HPP

#include "dbar/forms.hpp"
#include "dbar/linalg.hpp"
#include "dbar/model.hpp"
#include "dbar/norms.hpp"

#include <utility>
#include <vector>

namespace dbar {

enum class OperatorKind { Box0, Box1 };

/// The restriction of a complex Laplacian to one degree-invariant block,
/// expressed in the orthonormalized monomial basis.
struct BlockOperator {
    ModelSpec model;
    int m = 0;
    OperatorKind op = OperatorKind::Box1;
    std::vector<FormKey> basis; // ordered (J, component) index of rows/columns
    SymmetricMatrix matrix;

    /// Hull of the Gershgorin discs: (min_i a_ii - r_i, max_i a_ii + r_i).
    std::pair<double, double> gershgorin() const;
};

/// Assemble the block of box0/box1 on {|J| = m}.  The operator is applied
/// symbolically to each basis monomial; for the diagonal-metric models the
/// result is conjugated by the diagonal norm scaling, while the hyperbolic
/// metric goes through the monomial Gram matrix and a congruence with its
/// Cholesky factor.  The result must be symmetric to 1e-12 * max entry
/// (self-adjointness check) or assembly fails.
BlockOperator assemble_block(const ModelSpec& model, int m,
                             OperatorKind op = OperatorKind::Box1, int nodes = 40);

} // namespace dbar

#endif
