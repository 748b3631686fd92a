#pragma once

#include <stdexcept>
#include <string>

namespace liecalc {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mixing backends, arity mismatches, malformed permutations and the like.
struct backend_error : error {
    using error::error;
};

/// A point or arrow left the domain it must live in.
struct domain_error : error {
    using error::error;
};

/// Division required a unit and did not get one.
struct invert_error : error {
    using error::error;
};

}  // namespace liecalc
