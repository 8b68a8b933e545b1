#pragma once

#include <stdexcept>
#include <string>

namespace weber_orr {

/// Invalid input: argument outside the supported domain or a violated precondition.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure (quadrature, acceleration, root bracketing) did not reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace weber_orr
