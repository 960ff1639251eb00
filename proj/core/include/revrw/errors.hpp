#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace revrw {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A gate whose control and target sets overlap, or whose indices are invalid.
class InvalidGate : public Error {
 public:
  using Error::Error;
};

/// A line index or position outside the valid range for its circuit.
class OutOfRange : public Error {
 public:
  using Error::Error;
};

class WidthMismatch : public Error {
 public:
  using Error::Error;
};

/// Raised when an operation is asked to work above a configured width cap.
class WidthCapExceeded : public Error {
 public:
  WidthCapExceeded(int width, int cap)
      : Error("width " + std::to_string(width) + " exceeds cap " + std::to_string(cap)),
        width_(width),
        cap_(cap) {}

  int width() const noexcept { return width_; }
  int cap() const noexcept { return cap_; }

 private:
  int width_;
  int cap_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A rule instance applied to a circuit whose segment no longer matches.
class StaleInstance : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("line " + std::to_string(line) + ": " + message), line_(line), message_(message) {}

  int line() const noexcept { return line_; }
  /// Message without the line prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  int line_;
  std::string message_;
};

/// Replay failure; `step()` is the 0-based index of the first rejected step.
class TraceError : public Error {
 public:
  TraceError(std::size_t step, const std::string& reason)
      : Error("step " + std::to_string(step) + ": " + reason), step_(step), reason_(reason) {}

  std::size_t step() const noexcept { return step_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t step_;
  std::string reason_;
};

}  // namespace revrw
