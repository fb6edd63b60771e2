#pragma once

#include <stdexcept>
#include <string>

namespace qs {

// Bad input: violated precondition, unsupported construction, out-of-range
// argument. The CLI maps this family to exit code 2.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input data inconsistent with the structure it claims to have (e.g. a word
// that does not admit a block partition at the requested level).
struct consistency_error : domain_error {
    using domain_error::domain_error;
};

// Numerical failure at runtime: resolution exhausted, counts off after
// refinement, non-convergence. The CLI maps this family to exit code 3.
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Transport samples polluted by boundary reflection.
struct contaminated_error : resolution_error {
    using resolution_error::resolution_error;
};

} // namespace qs
