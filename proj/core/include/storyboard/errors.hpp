#ifndef STORYBOARD_ERRORS_HPP
#define STORYBOARD_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace storyboard {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The bundle directory is missing a required file or is otherwise unusable.
class BundleError : public Error {
public:
    using Error::Error;
};

/// A bundle file could not be parsed. Carries the offending file and line.
class ParseError : public Error {
public:
    ParseError(std::string file, long line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file_(std::move(file)), line_(line)
    {
    }

    const std::string& file() const noexcept { return file_; }
    long line() const noexcept { return line_; }

private:
    std::string file_;
    long line_;
};

/// References to classes, methods or layouts that do not exist.
class LinkError : public Error {
public:
    explicit LinkError(std::vector<std::string> unresolved);

    const std::vector<std::string>& unresolved() const noexcept
    {
        return unresolved_;
    }

private:
    std::vector<std::string> unresolved_;
};

/// An intent target could not be bound to a literal class.
class UnresolvedTransition : public Error {
public:
    using Error::Error;
};

/// An attribute value could not be traced to a literal or resource.
class UnresolvedAttribute : public Error {
public:
    using Error::Error;
};

/// A static-layout class has no layout file.
class MissingLayout : public Error {
public:
    using Error::Error;
};

class MetricError : public Error {
public:
    using Error::Error;
};

class IOError : public Error {
public:
    using Error::Error;
};

/// A non-fatal problem found while analysing a bundle.
struct Warning {
    std::string code;    // e.g. "unresolved_transition"
    std::string subject; // class or layout the warning is about
    std::string message;

    friend bool operator==(const Warning&, const Warning&) = default;
};

/// Collects warnings emitted by the analysis stages.
class Diagnostics {
public:
    void warn(std::string code, std::string subject, std::string message)
    {
        items_.push_back(
                {std::move(code), std::move(subject), std::move(message)});
    }

    const std::vector<Warning>& items() const noexcept { return items_; }
    std::size_t count(const std::string& code) const;
    bool empty() const noexcept { return items_.empty(); }

private:
    std::vector<Warning> items_;
};

} // namespace storyboard

#endif
