#include "dynprice/error.hpp"

namespace dynprice {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::InvalidArgument: return "invalid argument";
        case ErrorKind::IntervalMismatch: return "interval mismatch";
        case ErrorKind::GridMismatch: return "sample grid mismatch";
        case ErrorKind::Aliasing: return "aliasing bound violated";
        case ErrorKind::PlanCoverage: return "plan coverage";
        case ErrorKind::BusImbalance: return "bus imbalance";
        case ErrorKind::ZeroEnergy: return "zero-energy bus";
        case ErrorKind::Parse: return "parse error";
    }
    return "unknown";
}

}  // namespace dynprice
