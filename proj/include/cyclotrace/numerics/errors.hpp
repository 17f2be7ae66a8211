#pragma once

#include <stdexcept>
#include <string>

namespace cyclotrace {

// Argument outside the mathematical domain of an operation (poles, bad congruences).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Series or quadrature did not reach the requested tolerance.
struct convergence_error : std::runtime_error {
    convergence_error(const std::string& what, std::string diagnostics = {})
        : std::runtime_error(what), diagnostics(std::move(diagnostics)) {}
    std::string diagnostics;
};

// Operands carried different mantissa widths.
struct precision_error : std::logic_error {
    using std::logic_error::logic_error;
};

// A state that the mathematics says cannot happen.
struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace cyclotrace
