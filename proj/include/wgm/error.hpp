#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wgm {

// Error families; each maps onto one CLI exit code.
enum class ErrorKind {
  usage,          // invalid flags or configuration
  parse,          // malformed or inconsistent input files
  empty_input,    // an operation was handed an empty graph, log or category
  numeric_domain  // a numeric parameter is outside its precondition
};

// Exit codes used by the command-line front end.
constexpr int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::usage: return 2;
    case ErrorKind::parse: return 3;
    case ErrorKind::empty_input: return 4;
    case ErrorKind::numeric_domain: return 5;
  }
  return 1;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string name, const std::string& what)
      : std::runtime_error(name + ": " + what), kind_(kind), name_(std::move(name)) {}

  ErrorKind kind() const noexcept { return kind_; }
  // Short identifier such as "EmptyGraph" or "ParseError".
  const std::string& name() const noexcept { return name_; }

 private:
  ErrorKind kind_;
  std::string name_;
};

// Input-file errors carry the 1-based line number that triggered them.
class InputError : public Error {
 public:
  InputError(std::string name, std::size_t line, const std::string& reason)
      : Error(ErrorKind::parse, std::move(name), "line " + std::to_string(line) + ": " + reason),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline Error empty_graph() {
  return Error(ErrorKind::empty_input, "EmptyGraph", "graph has no nodes");
}

}  // namespace wgm
