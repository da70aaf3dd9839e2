// Copyright 2026 The modframe authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MODFRAME_ERRORS_HPP
#define MODFRAME_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace modframe {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structural incompatibility between operands (spectra, fiber dimensions,
/// index counts).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition does not hold at the working tolerance
/// (not a frame, not Hermitian, not a complete Parseval frame vector, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure could not meet its contract (eigenvalue below the
/// invertibility floor, rank-deficient solve, retry budget exhausted).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// Input-layer errors. Each carries a JSON-pointer-style location when one
// is known, e.g. "/group/table/2/1".

/// The file is not valid JSON.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// The JSON is well formed but does not match the schema (missing field,
/// wrong type, unsupported version).
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// The data matches the schema but fails semantic validation (group axioms,
/// representation axioms, shape compatibility, dangling references).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace modframe

#endif  // MODFRAME_ERRORS_HPP
