#ifndef DBAR_ERRORS_HPP
#define DBAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dbar {

// Thrown when a numerical result cannot be certified to the requested
// tolerance (non-convergent quadrature, divergent integral, ...).
// Distinct from std::domain_error so the CLI can map it to its own exit code.
class accuracy_error : public std::runtime_error {
public:
    explicit accuracy_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace dbar

#endif
