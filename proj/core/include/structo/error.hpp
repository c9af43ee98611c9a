#pragma once

#include <stdexcept>
#include <string>

namespace structo {

// Malformed or precondition-violating input. The CLI maps this to exit code 2.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error with a byte offset and 1-based line/column into the source text.
class parse_error : public input_error {
 public:
  parse_error(const std::string& what, std::size_t offset, std::size_t line, std::size_t column)
      : input_error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        offset_(offset), line_(line), column_(column) {}
  std::size_t offset() const noexcept { return offset_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t offset_, line_, column_;
};

// A structure code that names no point of the coded relation.
class decode_error : public input_error {
 public:
  using input_error::input_error;
};

// An internal postcondition failed. Never expected on valid input.
class contract_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace structo
