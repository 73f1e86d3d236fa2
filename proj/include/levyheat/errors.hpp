#pragma once

#include <stdexcept>
#include <string>

namespace levyheat {

/// Violated precondition or invariant of an operation (wrong representation,
/// negative time, index out of range, malformed input, ...).
class contract_error : public std::invalid_argument {
public:
    explicit contract_error(const std::string& what) : std::invalid_argument(what) {}
};

/// A symbol or norm was requested where it is singular, e.g. a negative-order
/// homogeneous operator applied to a field with nonzero mean.
class singularity_error : public std::domain_error {
public:
    explicit singularity_error(const std::string& what) : std::domain_error(what) {}
};

/// A moment integral of a jump measure diverges.
class infinite_moment_error : public std::domain_error {
public:
    explicit infinite_moment_error(const std::string& what) : std::domain_error(what) {}
};

} // namespace levyheat
