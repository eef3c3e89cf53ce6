#pragma once

#include <stdexcept>
#include <string>

namespace chordmeans {

/// Raised when an input lies outside the mathematical domain of an
/// operation: a nonpositive length, a vanishing chord with p < 0, a curve of
/// the wrong smoothness class, and so on. The CLI maps it to exit status 2.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Raised when a numerical procedure fails to converge or a bracket cannot
/// be found. Carries a human readable diagnostic.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool condition, const std::string& message) {
  if (!condition) throw DomainError(message);
}

}  // namespace detail
}  // namespace chordmeans
