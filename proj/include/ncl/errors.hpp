#pragma once

#include <stdexcept>
#include <string>

namespace ncl {

/// Invalid input: bad weights, malformed geometry, violated preconditions.
class validation_error : public std::invalid_argument {
public:
  explicit validation_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Numeric failure: divergent integral, unconverged quadrature, search-space cap.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ncl
