#pragma once

#include <stdexcept>
#include <string>

namespace shiftcg {

// Failure categories. The CLI maps them onto process exit codes.
enum class ErrorKind {
  invalid_input = 2,
  non_converged = 3,
  resource_cap = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Malformed instance, unknown job reference, violated precondition.
class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::invalid_input, what) {}
};

// A shift that cannot be encoded as an o-d path of the shift digraph.
class EncodingError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Path count, candidate list or column injection exceeded a configured cap.
class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what)
      : Error(ErrorKind::resource_cap, what) {}
};

class NotConverged : public Error {
 public:
  explicit NotConverged(const std::string& what)
      : Error(ErrorKind::non_converged, what) {}
};

}  // namespace shiftcg
