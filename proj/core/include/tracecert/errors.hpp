#ifndef TRACECERT_ERRORS_HPP
#define TRACECERT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tracecert {

// Malformed input text (trace or DIMACS). Carries the 1-based line the
// tokenizer was on when it gave up; 0 when no position applies.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string msg, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg
                                    : std::move(msg)),
        line_(line) {}
  long line() const { return line_; }

private:
  long line_;
};

// Structurally valid trace that cannot be turned into a checkable problem
// (no original chains, dangling antecedent index, unresolved '*').
class TranslateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Reference-procedure failures: guard violations, unresolvable implicit
// chains, saturation blowing past its safety cap.
class OracleError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Experiment-level misuse (no derived chains, combination cap exceeded, ...).
class HarnessError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace tracecert

#endif
