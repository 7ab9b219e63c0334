#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shiftbench {

// Base for every error this library throws. Module boundaries translate
// these into exit codes (CLI) or HTTP statuses (study service).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

// A realized pair failed an automated quality filter.
class QualityError : public Error {
 public:
  using Error::Error;
};

class BackendError : public Error {
 public:
  explicit BackendError(const std::string& what, bool retryable = false)
      : Error(what), retryable_(retryable) {}
  bool retryable() const noexcept { return retryable_; }

 private:
  bool retryable_;
};

// status is the HTTP status, or 0 when no response arrived. Connection
// failures, 429 and 5xx are retryable.
class TransportError : public BackendError {
 public:
  explicit TransportError(const std::string& what, int status = 0)
      : BackendError(what, status == 0 || status == 429 || status >= 500), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

class ProtocolError : public BackendError {
 public:
  explicit ProtocolError(const std::string& what) : BackendError(what, false) {}
};

class NumericalError : public Error {
 public:
  NumericalError(const std::string& what, double rcond)
      : Error(what + " (reciprocal condition estimate " + std::to_string(rcond) + ")"),
        rcond_(rcond) {}
  double rcond() const noexcept { return rcond_; }

 private:
  double rcond_;
};

class ConflictError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// A finite resource (such as the study's pair pool) cannot serve the request.
class ExhaustedError : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftbench
