#pragma once

#include <stdexcept>
#include <string>

namespace ltlkit {

// Raised while tokenizing or parsing any of the text formats (formula,
// model, machine).  Positions are 1-based; column 0 means "whole line".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, int line = 0, int column = 0)
        : std::runtime_error(format(message, line, column)),
          line_(line),
          column_(column) {}

    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    static std::string format(const std::string& message, int line, int column) {
        if (line <= 0) return message;
        std::string out = "line " + std::to_string(line);
        if (column > 0) out += ", column " + std::to_string(column);
        out += ": " + message;
        return out;
    }

    int line_;
    int column_;
};

// Raised when an input is well-formed text but semantically unusable:
// a non-serial model, an invalid machine, a path that is not a path,
// a run that leaves its tape bounds.
class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ltlkit
