#pragma once

#include <stdexcept>
#include <string>

namespace dyadic {

/// Raised when a requested level set is empty (e.g. alpha > 1/2 for normal
/// sequences, or theta outside [alpha, (2+alpha)/3]).
class EmptyLevelSet : public std::domain_error {
public:
    explicit EmptyLevelSet(const std::string& what) : std::domain_error(what) {}
};

/// Exact-mode counting was asked for a size whose counts are too large to
/// hold; the caller should switch to log-space.
class CountOverflow : public std::length_error {
public:
    explicit CountOverflow(const std::string& what) : std::length_error(what) {}
};

} // namespace dyadic
