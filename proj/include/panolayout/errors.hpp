#pragma once

#include <stdexcept>
#include <string>

namespace panolayout {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A value failed one of its type invariants; the message names it.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed. line() is 1-based, 0 when unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Layout reconstruction failed; carries the pipeline stage that failed.
class ReconstructionError : public Error {
public:
    ReconstructionError(const std::string& stage, const std::string& msg)
        : Error(stage + ": " + msg), stage_(stage) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

/// Two layouts cannot be compared by the requested metric.
class IncomparableLayoutsError : public Error {
public:
    using Error::Error;
};

}  // namespace panolayout
