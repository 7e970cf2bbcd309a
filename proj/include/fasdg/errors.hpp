#ifndef FASDG_ERRORS_HPP
#define FASDG_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fas {

// A bound evaluator was called outside the hypotheses of its inequality
// (e.g. p > 1/2 or r*p > 1 for the Bennett-route bounds).
class HypothesisError : public std::domain_error {
 public:
  explicit HypothesisError(const std::string& what) : std::domain_error(what) {}
};

// An input exceeds a hard resource cap (factorial enumeration, subset table,
// exact double-sum). Distinct from a precondition violation: the request is
// well-formed, just too large for the chosen method.
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed text input; carries the 1-based line number it was detected on.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fas

#endif
