#pragma once

#include <stdexcept>
#include <string>

namespace grpkit {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands live over different variable spaces.
class SpaceMismatch : public Error {
public:
    using Error::Error;
};

class UnknownVariable : public Error {
public:
    explicit UnknownVariable(const std::string& name)
        : Error("unknown variable '" + name + "'"), name_(name) {}
    [[nodiscard]] const std::string& name() const { return name_; }

private:
    std::string name_;
};

/// The divisor does not divide the dividend. Divided differences always
/// divide exactly, so this signals corrupted input.
class InexactDivision : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}
    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// A germ component has a nonzero constant term.
class NonOriginGerm : public Error {
public:
    using Error::Error;
};

/// Declared n disagrees with the declared variables.
class ArityMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace grpkit
