#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kzmc {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid argument to an operation: bad label sets, out-of-range indices.
class domain_error : public error {
 public:
  using error::error;
};

class parse_error : public error {
 public:
  parse_error(const std::string& message, std::size_t line, std::size_t column)
      : error(message + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A precondition on mathematical input failed (non-commuting matrices,
// non-integrable system, singular matrix).
class contract_error : public error {
 public:
  using error::error;
};

class invariance_error : public contract_error {
 public:
  using contract_error::contract_error;
};

class irrational_spectrum_error : public contract_error {
 public:
  using contract_error::contract_error;
};

// A computed result disagrees with what the theory predicts. Should never fire.
class theorem_violation : public error {
 public:
  using error::error;
};

}  // namespace kzmc
