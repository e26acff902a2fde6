#pragma once

#include <stdexcept>
#include <string>

namespace polyfe {

// Geometric input that violates a validity requirement (non-convex cell,
// non-planar face, inconsistent orientation, ...).
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation point outside the domain of a pointwise formula.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file; message carries the offending line number.
class IoError : public std::runtime_error {
 public:
  IoError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit IoError(const std::string& what) : std::runtime_error(what), line_(-1) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace polyfe
