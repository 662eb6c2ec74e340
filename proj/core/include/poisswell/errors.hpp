#pragma once

#include <stdexcept>
#include <string>

namespace poisswell {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Iterative elliptic solve did not reach its tolerance.
class NonConvergence : public Error {
public:
    NonConvergence(std::string const& what, int iterations, double residual)
        : Error(what), iterations_(iterations), residual_(residual) {}
    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// Requested time step exceeds the scheme's stability bound.
class StabilityViolation : public Error {
public:
    StabilityViolation(std::string const& what, double dt, double bound)
        : Error(what), dt_(dt), bound_(bound) {}
    double dt() const noexcept { return dt_; }
    double bound() const noexcept { return bound_; }

private:
    double dt_;
    double bound_;
};

class MissingPhase : public Error {
public:
    using Error::Error;
};

class NotAGradient : public Error {
public:
    using Error::Error;
};

class NonzeroMean : public Error {
public:
    using Error::Error;
};

class InsufficientHistory : public Error {
public:
    using Error::Error;
};

/// The blow-up monitor fired; carries the sample time and the monitored sum at that time.
class BlowupDetected : public Error {
public:
    BlowupDetected(std::string const& what, double t, double monitor_sum)
        : Error(what), t_(t), monitor_sum_(monitor_sum) {}
    double t() const noexcept { return t_; }
    double monitor_sum() const noexcept { return monitor_sum_; }

private:
    double t_;
    double monitor_sum_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Malformed configuration text. Carries the 1-based line number and the key, if known.
class ParseError : public Error {
public:
    ParseError(std::string const& what, int line, std::string key = {})
        : Error("line " + std::to_string(line) + ": " + what), line_(line), key_(std::move(key)) {}
    int line() const noexcept { return line_; }
    std::string const& key() const noexcept { return key_; }

private:
    int line_;
    std::string key_;
};

/// Well-formed configuration that violates a constraint.
class ValidationError : public Error {
public:
    ValidationError(std::string const& key, std::string const& what)
        : Error(key + ": " + what), key_(key) {}
    std::string const& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace poisswell
