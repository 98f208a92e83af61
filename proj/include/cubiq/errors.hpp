#pragma once

#include <stdexcept>
#include <string>

namespace cubiq {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed the configured enumeration or search budget.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The matrix does not have full rank.
class SingularMatrix : public Error {
 public:
  using Error::Error;
};

/// Malformed text input (matrix files, inline matrices, parameter lists).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input outside its domain. The message names
/// the violated clause.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class NotNonAcute : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

class NotOrthogonal : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

class MixedSigns : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

class ZeroParameter : public PreconditionFailed {
 public:
  using PreconditionFailed::PreconditionFailed;
};

}  // namespace cubiq
