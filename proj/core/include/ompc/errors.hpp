// SPDX-License-Identifier: Apache-2.0

#ifndef OMPC_ERRORS_HPP_
#define OMPC_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ompc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not agree (length mismatch, non-square input, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A least-squares system is numerically rank deficient.
class SingularityError : public Error {
 public:
  SingularityError(const std::string& what, std::size_t column)
      : Error(what), column_(column) {}

  /// Index of the offending column in the caller's matrix.
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t column_;
};

/// Input that makes the requested quantity undefined (zero atom, zero
/// residual, zero signal with finite SNR).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Scalar argument outside the domain of a formula.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Inputs that are individually valid but disagree with each other.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// The mutual-incoherence precondition of a certificate does not hold.
class CertificateInapplicableError : public Error {
 public:
  using Error::Error;
};

/// Malformed matrix, vector or config file.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}

  /// 1-based line number, or 0 when the error is not tied to a line.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace ompc

#endif  // OMPC_ERRORS_HPP_
