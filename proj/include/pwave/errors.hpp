#pragma once

#include <stdexcept>
#include <string>

namespace pwave {

// Base for everything thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad values in otherwise well-formed input (negative volume, alpha out of
// range, |r| >= 1, ...).
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// A row that could not be parsed at all. Carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& msg, long line_no)
        : Error(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
    long line;
};

struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg) : Error(msg) {}
};

// Day unusable for fitting: empty, zero volume, or fewer than 4 distinct
// prices on the active grid.
struct DegenerateDay : Error {
    explicit DegenerateDay(const std::string& msg) : Error(msg) {}
};

// A constant series where variance is required. An error rather than a
// silent zero so degenerate pipelines fail loudly.
struct ZeroVariance : Error {
    explicit ZeroVariance(const std::string& msg) : Error(msg) {}
};

struct TooFewDays : Error {
    explicit TooFewDays(const std::string& msg) : Error(msg) {}
};

struct TooFewPairs : Error {
    explicit TooFewPairs(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace pwave
