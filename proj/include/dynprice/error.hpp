#pragma once

#include <stdexcept>
#include <string>

namespace dynprice {

enum class ErrorKind {
    InvalidArgument,
    IntervalMismatch,
    GridMismatch,
    Aliasing,
    PlanCoverage,
    BusImbalance,
    ZeroEnergy,
    Parse,
};

const char* to_string(ErrorKind kind) noexcept;

/// All library failures are reported through this exception; the kind drives
/// the CLI exit code.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace dynprice
