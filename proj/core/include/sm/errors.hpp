#ifndef SM_ERRORS_HPP
#define SM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sm {

/// Input value outside the domain of a function or table.
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

/// A caller-supplied parameter violates a precondition.
class ParameterError : public std::runtime_error {
 public:
  explicit ParameterError(const std::string& what) : std::runtime_error(what) {}
};

/// A structural invariant of a value type does not hold.
class InvariantError : public std::runtime_error {
 public:
  explicit InvariantError(const std::string& what) : std::runtime_error(what) {}
};

/// A construction exceeded its configured resource budget (typically the
/// bit-length of exact rational abscissae, which grows geometrically under
/// repeated speedup extensions).
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A verification step could not find a required witness.
class InsufficientWitnessError : public std::runtime_error {
 public:
  explicit InsufficientWitnessError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace sm

#endif  // SM_ERRORS_HPP
