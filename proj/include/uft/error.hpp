#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uft {

/// Raised by the text parsers (tree files, op scripts, instance files).
/// Carries the 1-based line and the 1-based item index within that line
/// (0 when the error is not tied to a specific item).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t item = 0)
        : std::runtime_error("line " + std::to_string(line) +
                             (item ? ", entry " + std::to_string(item) : std::string{}) +
                             ": " + message),
          line_(line),
          item_(item) {}

    std::size_t line() const { return line_; }
    std::size_t item() const { return item_; }

private:
    std::size_t line_;
    std::size_t item_;
};

} // namespace uft
