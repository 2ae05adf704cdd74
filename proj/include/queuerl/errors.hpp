#pragma once

#include <stdexcept>
#include <string>

namespace queuerl {

// Base of every error raised by the library. The CLI maps each subclass to
// its own exit code (see io/run.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class UnknownEdge : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NoArrivals : public Error {
 public:
  using Error::Error;
};

class EmptyBuffer : public Error {
 public:
  using Error::Error;
};

class InsufficientBuffer : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

class NoBlockableNodes : public Error {
 public:
  using Error::Error;
};

class CheckpointError : public Error {
 public:
  using Error::Error;
};

// Missing or unreadable input, unwritable output.
class FileError : public Error {
 public:
  using Error::Error;
};

}  // namespace queuerl
