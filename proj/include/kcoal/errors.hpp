#pragma once

#include <stdexcept>
#include <string>

namespace kcoal {

/// Input file could not be parsed. Carries the display name of the source and
/// a 1-based line number (0 when the error is not tied to a single line).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, int line, const std::string& what)
        : std::runtime_error(file + (line > 0 ? ":" + std::to_string(line) : "") + ": " + what),
          file_(std::move(file)),
          line_(line) {}

    const std::string& file() const { return file_; }
    int line() const { return line_; }

private:
    std::string file_;
    int line_;
};

/// The requested size constraints admit no coalition structure at all
/// (e.g. sum of minimum sizes exceeds n, or k exceeds n with non-empty parts).
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An exact procedure was asked to run past its configured instance-size cap.
/// Raised instead of silently degrading; callers opt in to larger caps.
class SizeGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace kcoal
