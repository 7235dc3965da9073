#pragma once

#include <stdexcept>
#include <string>

namespace gvb {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPartition : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidMorphism : public Error {
 public:
  using Error::Error;
};

class NotAnIsomorphism : public Error {
 public:
  using Error::Error;
};

class ExtractionMismatch : public Error {
 public:
  using Error::Error;
};

class CompatibilityError : public Error {
 public:
  using Error::Error;
};

class ProjectionMismatch : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Malformed input text or file. `where` locates the offending item.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where.empty() ? what : where + ": " + what) {}
};

}  // namespace gvb
