#pragma once

#include <stdexcept>
#include <string>

namespace mlc {

/// Input text could not be parsed. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

/// File declares a format or metric this library does not handle.
class UnsupportedFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Point set admits no triangulation (e.g. all points collinear).
class DegenerateGeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Feature patch carries no usable signal (all pairwise distances zero).
class DegenerateFeatureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Training data cannot support fitting (e.g. a single class present).
class DegenerateDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mlc
