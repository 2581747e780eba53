#include "geokernels/errors.hpp"

namespace geokernels {

ParseError::ParseError(std::size_t line, const std::string& what)
    : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

}  // namespace geokernels
