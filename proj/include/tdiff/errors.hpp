#pragma once

#include <stdexcept>
#include <string>

namespace tdiff {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class DegenerateInterval : public Error {
public:
    using Error::Error;
};

class NoStationaryLaw : public Error {
public:
    using Error::Error;
};

class SettingsError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class PolicyError : public Error {
public:
    using Error::Error;
};

/// Integrand produced a NaN.
class IntegrandError : public Error {
public:
    using Error::Error;
};

/// Requested accuracy was not reached; carries the best estimate so far.
class AccuracyError : public Error {
public:
    AccuracyError(const std::string& what, double best_estimate, double error_estimate)
        : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

    double best_estimate() const noexcept { return best_estimate_; }
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double best_estimate_;
    double error_estimate_;
};

}  // namespace tdiff
