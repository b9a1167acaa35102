#pragma once

#include <stdexcept>
#include <string>

namespace nchardy {

/// Base class of every error raised by the toolkit.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shapes do not conform to the ambient block structure, or a structural
/// description (nest, instance file) is malformed.
class StructuralError : public Error {
public:
  using Error::Error;
};

/// An argument lies outside the domain of an operation (p < 1, an element
/// that is not positive semidefinite, ...).
class DomainError : public Error {
public:
  using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
  PreconditionError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// A numerical invariant that must hold by construction failed beyond
/// tolerance. Carries the offending residual.
class InvariantError : public Error {
public:
  InvariantError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}
  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

/// Malformed command-line arguments or instance files. The message names the
/// offending field.
class UsageError : public Error {
public:
  using Error::Error;
};

} // namespace nchardy
