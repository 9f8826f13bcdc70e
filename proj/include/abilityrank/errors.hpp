#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace abilityrank {

// Base class for all library errors. Subclasses exist so callers can
// distinguish failure modes without parsing messages.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class DuplicateAnswerError : public Error {
 public:
  DuplicateAnswerError(std::int64_t user, std::int64_t item)
      : Error("duplicate answer for user " + std::to_string(user) + ", item " +
              std::to_string(item)),
        user(user),
        item(item) {}
  std::int64_t user;
  std::int64_t item;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyRowError : public Error {
 public:
  explicit EmptyRowError(std::int64_t user)
      : Error("user " + std::to_string(user) + " has no answers"), user(user) {}
  std::int64_t user;
};

class EmptyColumnError : public Error {
 public:
  using Error::Error;
};

class BetaTooSmallError : public Error {
 public:
  using Error::Error;
};

class ZeroIterateError : public Error {
 public:
  using Error::Error;
};

class DegenerateDeflationError : public Error {
 public:
  using Error::Error;
};

class NonSquareError : public Error {
 public:
  using Error::Error;
};

class NonBinaryError : public Error {
 public:
  using Error::Error;
};

class TooLargeError : public Error {
 public:
  using Error::Error;
};

class DisconnectedError : public Error {
 public:
  explicit DisconnectedError(std::vector<std::size_t> component_sizes)
      : Error("response matrix is disconnected (" +
              std::to_string(component_sizes.size()) + " components)"),
        component_sizes(std::move(component_sizes)) {}
  std::vector<std::size_t> component_sizes;
};

class MissingKeyError : public Error {
 public:
  explicit MissingKeyError(std::int64_t item)
      : Error("answer key has no entry for item " + std::to_string(item)),
        item(item) {}
  std::int64_t item;
};

class ConstantInputError : public Error {
 public:
  using Error::Error;
};

class NotUnitError : public Error {
 public:
  using Error::Error;
};

class ThresholdOrderError : public Error {
 public:
  using Error::Error;
};

class ConfigInvalidError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public Error {
 public:
  TimeoutError(std::string method, double elapsed_ms)
      : Error("method " + method + " timed out after " +
              std::to_string(elapsed_ms) + " ms"),
        method(std::move(method)),
        elapsed_ms(elapsed_ms) {}
  std::string method;
  double elapsed_ms;
};

}  // namespace abilityrank
