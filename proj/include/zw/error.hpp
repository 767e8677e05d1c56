#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace zw {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Positioned syntax error in term or JSON input. Line and column are 1-based.
class ParseError : public Error {
public:
  ParseError(const std::string& message, int line, int column)
      : Error(message + " at line " + std::to_string(line) + ", column " +
              std::to_string(column)),
        line_(line), column_(column) {}

  [[nodiscard]] int line() const noexcept { return line_; }
  [[nodiscard]] int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

class TypeError : public Error {
public:
  using Error::Error;
};

class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  [[nodiscard]] const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid diagram";
    for (const auto& s : v) {
      out += "; " + s;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

// Leg cap or representation limit exceeded.
class ResourceError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

} // namespace zw
