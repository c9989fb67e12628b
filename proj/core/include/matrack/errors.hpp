#pragma once

#include <stdexcept>
#include <string>

namespace matrack {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value handed to an operation violates that operation's preconditions
/// (non-finite box, zero-norm feature, mismatched matrix shapes, ...).
class InvalidInputError : public Error {
public:
    using Error::Error;
};

/// A configuration value is outside its documented range.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Frame indices fed to a stateful consumer went backwards.
class SequenceError : public Error {
public:
    using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

/// A line of an input file failed to parse. Carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& path, long line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what),
          path_(path),
          line_(line) {}

    const std::string& path() const noexcept { return path_; }
    long line() const noexcept { return line_; }

private:
    std::string path_;
    long line_;
};

/// A file parsed but its structure contradicts the declared schema
/// (missing JSON key, wrong feature dimension, row-count mismatch).
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Detection and feature files do not join 1:1.
class AlignmentError : public Error {
public:
    using Error::Error;
};

/// A metric is undefined on the given input (e.g. empty ground truth).
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

}  // namespace matrack
