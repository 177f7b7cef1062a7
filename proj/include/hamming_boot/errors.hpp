#pragma once

#include <stdexcept>
#include <string>

namespace hamming_boot {

/// Invalid argument for the requested operation (bad coordinates, probability
/// outside [0,1], axis out of range, ...). CLI maps this to exit code 1.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Operation exists but is not defined for this shape/threshold
/// (e.g. the d=3 configuration detectors on a d=2 torus).
class UnsupportedError : public DomainError {
 public:
  explicit UnsupportedError(const std::string& what) : DomainError(what) {}
};

/// Request exceeds a resource budget (memory cap, enumeration cap, IO
/// failure). CLI maps this to exit code 2.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hamming_boot
