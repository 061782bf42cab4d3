#include "aer/errors.hpp"

namespace aer {

int exit_status(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::assumption: return 2;
        case ErrorKind::numerical: return 3;
        case ErrorKind::config: return 4;
    }
    return 1;
}

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::config: return "config";
        case ErrorKind::assumption: return "assumption";
        case ErrorKind::numerical: return "numerical";
    }
    return "unknown";
}

void rethrow_with_stage(const Error& e, const std::string& stage) {
    std::string msg = stage + ": " + e.what();
    switch (e.kind()) {
        case ErrorKind::config: throw ConfigError(msg);
        case ErrorKind::assumption: throw AssumptionViolation(msg);
        case ErrorKind::numerical: throw NumericalError(msg);
    }
    throw Error(e.kind(), msg);
}

}  // namespace aer
