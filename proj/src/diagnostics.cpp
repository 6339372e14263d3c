#include "apia/diagnostics.hpp"

#include <algorithm>
#include <sstream>

namespace apia {

std::ostream& operator<<(std::ostream& os, const Diagnostic& d) {
  return os << d.loc.line << ':' << d.loc.column << ": " << (d.severity == Severity::Error ? "error" : "warning")
            << ": " << d.message;
}

std::string format_diagnostics(const std::vector<Diagnostic>& diagnostics, const std::string& file_name) {
  std::ostringstream out;
  for (const auto& d : diagnostics) out << file_name << ':' << d << '\n';
  return out.str();
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

}  // namespace apia
