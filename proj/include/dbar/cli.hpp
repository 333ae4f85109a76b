#ifndef DBAR_CLI_HPP
#define DBAR_CLI_HPP

#include "dbar/model.hpp"

#include <string>

namespace dbar {

/// Parse the model grammar used by every verb:
///   segal-bargmann:n=2   hyperbolic:n=2,alpha=1.5
///   standard:n=2,gamma=1 cigar:alpha=5
/// Throws std::domain_error on unknown names, keys or invalid parameters.
ModelSpec parse_model(const std::string& spec);

/// Full argv-level entry point.  Exit status: 0 success, 1 domain/usage
/// errors, 2 accuracy errors (including failed reproduce checks), 3 I/O.
int run_cli(int argc, const char* const* argv);

} // namespace dbar

#endif
