#pragma once

#include <stdexcept>
#include <string>

namespace fvp {

/// Invalid run configuration or model parameters. CLI exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite value produced inside a solver. CLI exit code 3.
class BlowupError : public std::runtime_error {
public:
    BlowupError(const std::string& what, int cell, int stage = -1)
        : std::runtime_error(what), cell_(cell), stage_(stage) {}

    int cell() const noexcept { return cell_; }
    int stage() const noexcept { return stage_; }

private:
    int cell_;
    int stage_;
};

/// Zero pivot met during the tridiagonal elimination.
class SingularSystemError : public std::runtime_error {
public:
    explicit SingularSystemError(const std::string& what) : std::runtime_error(what) {}
};

/// Model outside the contract of an operation (e.g. diffusion nonlinear in u_s).
class UnsupportedModelError : public std::runtime_error {
public:
    explicit UnsupportedModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Failed file input/output. CLI exit code 4.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fvp
