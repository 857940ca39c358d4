#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace socatt {

/// Malformed input file. `line()` is 1-based, or 0 when not line-specific.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace socatt
