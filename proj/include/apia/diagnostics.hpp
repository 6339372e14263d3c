#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace apia {

struct SourceLoc {
  int line = 0;
  int column = 0;

  // Locations never participate in structural equality of parsed values.
  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
  SourceLoc loc;
  Severity severity = Severity::Error;
  std::string message;
};

std::ostream& operator<<(std::ostream& os, const Diagnostic& d);

// Renders "file:line:col: error: message" lines.
std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics,
                               const std::string& file_name);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Either a value or the full list of diagnostics explaining why there is none.
// Warnings may accompany a value.
template <typename T>
struct ParseResult {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return value.has_value(); }
  const T& operator*() const { return *value; }
  const T* operator->() const { return &*value; }
};

// Thrown by the *_or_throw convenience wrappers.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string what, std::vector<Diagnostic> diagnostics)
      : std::runtime_error(std::move(what)), diagnostics_(std::move(diagnostics)) {}
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace apia
