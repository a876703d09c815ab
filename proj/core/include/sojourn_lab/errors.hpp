#pragma once

#include <stdexcept>
#include <string>

namespace sojourn_lab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Operation is not defined for the given kind of parameter space.
class UnsupportedSpaceError : public Error
{
  public:
    using Error::Error;
};

/// A point, transform, or field belongs to a different space than expected.
class SpaceMismatchError : public Error
{
  public:
    using Error::Error;
};

/// Two field values that must be distinct compare equal.
class TieError : public Error
{
  public:
    using Error::Error;
};

/// A random generator could not produce a realization meeting its invariants.
class GenerationError : public Error
{
  public:
    using Error::Error;
};

/// An argument is outside an operation's domain.
class DomainError : public Error
{
  public:
    using Error::Error;
};

/// A runtime consistency check on a computed quantity failed.
class InvariantViolation : public Error
{
  public:
    using Error::Error;
};

/// Experiment configuration is invalid.
class ConfigError : public Error
{
  public:
    using Error::Error;
};

/// Reading or writing a file failed; the message carries the path.
class IoError : public Error
{
  public:
    using Error::Error;
};

}  // namespace sojourn_lab
