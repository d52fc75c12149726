#include "ldag/error.hpp"

#include <sstream>

namespace ldag {

namespace {

std::string describe_cycle(const std::vector<int>& cycle) {
  std::ostringstream out;
  out << "directed cycle:";
  for (int v : cycle) out << ' ' << v;
  return out.str();
}

std::string describe_parse(const std::string& source, std::size_t line, std::size_t column,
                           const std::string& message) {
  std::ostringstream out;
  out << source << ':' << line << ':' << column << ": " << message;
  return out.str();
}

}  // namespace

CycleError::CycleError(std::vector<int> cycle)
    : Error("cycle", describe_cycle(cycle)), cycle_(std::move(cycle)) {}

KappaOutOfRange::KappaOutOfRange(double kappa)
    : Error("kappa_out_of_range", "kappa must lie in (0, 1], got " + std::to_string(kappa)) {}

ParseError::ParseError(std::string source, std::size_t line, std::size_t column, const std::string& message)
    : Error("parse_error", describe_parse(source, line, column, message)), line_(line), column_(column) {}

}  // namespace ldag
