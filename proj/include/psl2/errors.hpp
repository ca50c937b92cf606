#pragma once

#include <stdexcept>
#include <string>

namespace psl2 {

// Bad caller input: out-of-range prime, composite where a prime is needed, etc.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured resource cap (subgroup count, memory) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed: a formula produced a non-integer,
// c != s + n, an unclassifiable subgroup, and so on. Always a bug or a
// contradiction with the group-theoretic input data.
class IntegrityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Adaptive quadrature stopped before reaching the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : std::runtime_error(what), achieved_error_(achieved_error) {}
  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

}  // namespace psl2
