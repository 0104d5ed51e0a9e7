#pragma once

#include <stdexcept>

namespace geb {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument violates an operation's precondition (bad width, index out of
// range, zero partition size, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// A file or text payload does not match its declared format. The message
// names the byte offset (binary formats) or line number (text formats).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Match planting could not find a satisfying or non-satisfying assignment
// within the probing budget.
class PlantError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failure (missing file, unwritable path).
class IoError : public Error {
 public:
  using Error::Error;
};

// Bad command-line usage; maps to exit code 2 in the CLI.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace geb
