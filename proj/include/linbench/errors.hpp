#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace linbench {

/// Precondition violations: bad dimensions, malformed arguments.
class invalid_argument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Zero pivot after partial pivoting.
class singular_matrix_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class not_positive_definite_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class rank_deficient_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A zero row or column sum in a trade matrix; the message names the
/// offending country or product.
class degenerate_margin_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input record. `line()` is 1-based and counts the header.
class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace linbench
