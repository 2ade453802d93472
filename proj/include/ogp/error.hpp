#pragma once

#include <stdexcept>
#include <string>

namespace ogp {

// Process exit codes used by the CLI.
enum class ExitCode : int { ok = 0, usage = 1, invariant = 2, io = 3 };

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what, ExitCode code = ExitCode::usage)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

// Invalid model parameters or operation preconditions.
class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what) : Error(what, ExitCode::usage) {}
};

// A generated or loaded graph without edges; modularity is undefined on it.
class DegenerateGraphError : public Error {
 public:
  explicit DegenerateGraphError(const std::string& what) : Error(what, ExitCode::invariant) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")", ExitCode::io), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(what, ExitCode::io) {}
};

// A postcondition that the library asserts at runtime did not hold.
class InvariantError : public Error {
 public:
  explicit InvariantError(const std::string& what) : Error(what, ExitCode::invariant) {}
};

}  // namespace ogp
