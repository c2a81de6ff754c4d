#pragma once

#include <stdexcept>
#include <string>

namespace wedderburn {

/// Thrown when an operation needs a semisimple circulant ring but some
/// modulus shares a factor with the field characteristic.
class non_semisimple_error : public std::domain_error {
 public:
  explicit non_semisimple_error(const std::string& msg) : std::domain_error(msg) {}
};

/// Thrown when a coefficient-count or field-size guard would be exceeded.
class size_limit_error : public std::length_error {
 public:
  explicit size_limit_error(const std::string& msg) : std::length_error(msg) {}
};

/// Thrown when serialized input cannot be interpreted as the requested type.
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Thrown when a spectral vector violates the component subfield constraints
/// and therefore corresponds to no ring element.
class spectrum_error : public std::runtime_error {
 public:
  explicit spectrum_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wedderburn
