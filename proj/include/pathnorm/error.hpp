#ifndef PATHNORM_ERROR_HPP
#define PATHNORM_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace pathnorm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown species/reaction ids, broken preconditions on pathway structure.
class StructuralError : public Error {
 public:
  using Error::Error;
};

// Malformed input documents (SBML, CSV).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A user-supplied request (resolution, projection set) was rejected.
// `field()` names the offending request field so callers can point at it.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace pathnorm

#endif  // PATHNORM_ERROR_HPP
