#pragma once

#include <stdexcept>
#include <string>

namespace qnd {

/// Malformed input: non-unit axes, negative table entries, bad weights, shots <= 0.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Argument outside the mathematical domain of a function.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Count data from which a conditional probability cannot be formed.
class EstimationError : public std::runtime_error {
public:
    explicit EstimationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qnd
