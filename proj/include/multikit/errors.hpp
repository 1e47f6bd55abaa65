#pragma once

#include <stdexcept>
#include <string>

namespace multikit {

// Operands that are not on the same grid / universe. Kept distinct from
// plain validation failures so the CLI can map it to its own exit code.
struct AlignmentError : std::invalid_argument {
    explicit AlignmentError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace multikit
