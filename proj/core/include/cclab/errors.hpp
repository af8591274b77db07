#pragma once

#include <stdexcept>

namespace cclab {

// Malformed input: wrong shapes, non-01 entries, unparseable files. The
// command-line tool maps these to exit code 2. Mathematical violations are
// never thrown; they travel inside verification reports.
struct StructuralError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A builder could not produce the requested structure from an otherwise
// well-formed input (e.g. a design whose Gram matrix has too many levels).
struct BuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A request outside the supported search bounds.
struct UnsupportedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cclab
