#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace osnim {

using NodeId = std::uint32_t;
using NodeSet = std::vector<NodeId>;

enum class Metric { retweeters, readers };

std::string_view to_string(Metric metric);
Metric parse_metric(std::string_view text);

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text; line() is 1-based, 0 when not tied to a line.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Instance is beyond what an exhaustive routine is willing to enumerate.
class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace osnim
