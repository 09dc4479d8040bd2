#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace posecodec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition failures: non-finite values, rank-deficient matrices, bad sizes.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Malformed or truncated container / entropy-coded data.
class StreamError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Text interchange format errors. line() is 1-based; 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace posecodec
