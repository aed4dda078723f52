#pragma once

#include <stdexcept>
#include <string>

namespace norden {

// Malformed input object: non-symmetric form, singular Gram, degenerate pivot.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid numeric parameter such as a non-positive tolerance.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Shapes of operands do not agree.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A precondition of a geometric construction failed (point off the
// hypersurface, vanishing differential, inconsistent scene).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace norden
