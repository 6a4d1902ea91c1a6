#pragma once

#include <stdexcept>
#include <string>

namespace bw {

// Base for everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed source text; offset is a byte position into the input.
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t offset_)
        : Error(what + " (at byte " + std::to_string(offset_) + ")"), offset(offset_) {}
    std::size_t offset;
};

// Invalid spec data: bad family, dependence violation, bad file keys.
struct SpecError : Error {
    using Error::Error;
};

// Numerical/domain failure at evaluation time: division by zero, ln of a
// non-positive value, coordinate collision, exhausted resampling, exact-ring
// violations.
struct DomainError : Error {
    using Error::Error;
};

}  // namespace bw
