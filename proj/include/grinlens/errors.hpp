#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace grin {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested permittivity cannot be realized by the lattice material.
class UnreachablePermittivity : public std::out_of_range {
public:
    explicit UnreachablePermittivity(const std::string& what) : std::out_of_range(what) {}
};

/// Traces that must share a frequency grid do not.
class AlignmentError : public std::runtime_error {
public:
    AlignmentError(const std::string& what, std::vector<double> offending_hz)
        : std::runtime_error(what), offending_hz_(std::move(offending_hz)) {}
    [[nodiscard]] const std::vector<double>& offending_hz() const { return offending_hz_; }

private:
    std::vector<double> offending_hz_;
};

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& message)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}
    [[nodiscard]] std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Collects every configuration problem instead of stopping at the first one.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<std::string> problems)
        : std::invalid_argument(join(problems)), problems_(std::move(problems)) {}
    [[nodiscard]] const std::vector<std::string>& problems() const { return problems_; }

private:
    static std::string join(const std::vector<std::string>& items) {
        std::string out;
        for (const auto& s : items) {
            if (!out.empty()) out += "; ";
            out += s;
        }
        return out;
    }
    std::vector<std::string> problems_;
};

}  // namespace grin
