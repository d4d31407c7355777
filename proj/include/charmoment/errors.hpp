#ifndef CHARMOMENT_ERRORS_HPP
#define CHARMOMENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace charmoment {

// A quadrature or series-acceleration step failed to reach its tolerance in
// a way that makes the result unusable (as opposed to merely carrying a
// larger error estimate).
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// The request is well-formed but the model cannot supply what it needs,
// e.g. a fractional derivative order outside the model's declared range.
class capability_error : public std::invalid_argument {
 public:
  explicit capability_error(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace charmoment

#endif
