#ifndef ZFREE_ERRORS_HPP
#define ZFREE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zfree {

// Parameter outside an operation's domain (maps to CLI exit code 2).
struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Evaluation at (or too close to) a pole.
struct PoleError : DomainError {
  explicit PoleError(const std::string& what) : DomainError(what) {}
};

// Numeric failure: quadrature did not converge, singular system, ...
// (maps to CLI exit code 3).
struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureError : NumericError {
  explicit QuadratureError(const std::string& what) : NumericError(what) {}
};

}  // namespace zfree

#endif
