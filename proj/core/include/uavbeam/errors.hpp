#pragma once

#include <stdexcept>
#include <string>

namespace uavbeam {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query fell outside the terrain raster.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Two points coincide, or a direction is otherwise undefined.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A position lies below the local ground.
class InvalidPositionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. The message names the field and, when known, the line.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed input that violates a model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (empty series, t out of range).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Pattern analysis could not locate a main lobe or its half-power points.
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// Operation invoked in a state where it makes no sense (handover to self).
class LogicError : public Error {
 public:
  using Error::Error;
};

}  // namespace uavbeam
