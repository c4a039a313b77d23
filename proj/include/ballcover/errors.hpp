#pragma once

#include <stdexcept>
#include <string>

namespace ballcover {

/// An input violates an operation's contract: zero vector where a nonzero one
/// is required, dimension mismatch, invalid space, unsupported family.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical search disagreed with an analytic decision. Signals a bug or a
/// tolerance conflict; never swallowed.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input file, JSON document or vector literal.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A covering construction could not be certified (net too coarse for the
/// achieved slack, or a ball reaches the origin).
class CertificateError : public std::runtime_error {
public:
    CertificateError(const std::string& what, double min_slack, double resolution)
        : std::runtime_error(what), min_slack_(min_slack), resolution_(resolution) {}

    double min_slack() const noexcept { return min_slack_; }
    double resolution() const noexcept { return resolution_; }

private:
    double min_slack_;
    double resolution_;
};

}  // namespace ballcover
