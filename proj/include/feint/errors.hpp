#pragma once

#include <stdexcept>
#include <string>

namespace feint {

/// Malformed input file (bad JSON, wrong shape).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Structurally well-formed input that violates a data invariant.
/// The message names the offending action and the invariant.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A configuration that admits no solution (e.g. empty enumeration).
struct InfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Filesystem failure (missing file, unwritable output).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace feint
