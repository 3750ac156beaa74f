#ifndef SNNLAB_ERROR_H_
#define SNNLAB_ERROR_H_

#include <stdexcept>
#include <string>

namespace snnlab {

// Base class for every error raised by the library. The CLI maps each
// subclass to a distinct process exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Mismatched vector lengths, tensor shapes or trace/network pairings.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Invalid parameter values (negative time constants, empty inputs, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed architecture strings and configuration files.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Training produced a non-finite loss.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

// Numerical integration failed to reach its error target.
class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double achieved_error)
      : Error(what), achieved_error_(achieved_error) {}
  double achieved_error() const { return achieved_error_; }

 private:
  double achieved_error_;
};

// Binary file decoding failures (IDX datasets, checkpoints).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace snnlab

#endif  // SNNLAB_ERROR_H_
