#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace power {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or structurally invalid input (missing file, duplicate key).
class LoadError : public Error {
 public:
  using Error::Error;
};

// A file could not be written.
class IoError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// A phone symbol outside the fixed inventory.
class ClassificationError : public Error {
 public:
  explicit ClassificationError(const std::string& symbol)
      : Error("unknown phone symbol '" + symbol + "'"), symbol_(symbol) {}
  const std::string& symbol() const noexcept { return symbol_; }

 private:
  std::string symbol_;
};

// An internal consistency check failed; indicates a bug, never bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

enum class Severity { Warning, Error };

// A recoverable problem attached to a location in some input.
struct Diagnostic {
  Severity severity = Severity::Warning;
  std::string source;  // file name or "<utt_id>/<sys_id>"
  std::size_t line = 0;  // 1-based, 0 when not line-oriented
  std::string message;
};

using Diagnostics = std::vector<Diagnostic>;

std::string to_string(const Diagnostic& d);

}  // namespace power
