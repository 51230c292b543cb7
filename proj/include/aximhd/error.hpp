#pragma once

#include <stdexcept>
#include <string>

namespace aximhd {

/// Invalid sizes, unknown catalog names, malformed config documents.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Bad field passed to an operator (wrong parity, non-finite values, grid mismatch).
class FieldError : public std::invalid_argument {
public:
    explicit FieldError(const std::string& what) : std::invalid_argument(what) {}
};

/// Non-finite state detected during time integration.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double time, double pi_linf, double omega_linf)
        : std::runtime_error(what), time_(time), pi_linf_(pi_linf), omega_linf_(omega_linf) {}

    double time() const noexcept { return time_; }
    double pi_linf() const noexcept { return pi_linf_; }
    double omega_linf() const noexcept { return omega_linf_; }

private:
    double time_;
    double pi_linf_;
    double omega_linf_;
};

} // namespace aximhd
