#pragma once

#include <stdexcept>
#include <string>

namespace ggw {

/// A precondition of a mathematical operation failed (zero coweight,
/// non-dominant filtration weight, exhausted rewriting fuel, ...).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input could not be parsed or does not match the expected schema.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ggw
