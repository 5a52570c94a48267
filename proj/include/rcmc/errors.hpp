#pragma once

#include <stdexcept>
#include <string>

namespace rcmc {

// Bad user input (malformed graph file, out-of-range endpoint, self-loop,
// invalid parameter value).  The CLI maps this to exit code 2.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what, int line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

// An enumeration refused to run because the instance exceeds the configured
// guard (state spaces are 2^m).  The CLI maps this to exit code 3.
class GuardError : public std::runtime_error {
public:
    GuardError(const std::string& quantity, long value, long limit)
        : std::runtime_error(quantity + " = " + std::to_string(value) +
                             " exceeds guard limit " + std::to_string(limit)),
          limit_(limit) {}
    long limit() const { return limit_; }

private:
    long limit_;
};

} // namespace rcmc
