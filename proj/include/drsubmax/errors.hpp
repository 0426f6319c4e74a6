#pragma once

#include <stdexcept>
#include <string>

namespace drsubmax {

struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidRegion : std::runtime_error {
    explicit InvalidRegion(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidDelta : std::runtime_error {
    explicit InvalidDelta(const std::string& what) : std::runtime_error(what) {}
};

struct DomainViolation : std::runtime_error {
    explicit DomainViolation(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidBeta : std::runtime_error {
    explicit InvalidBeta(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidSchedule : std::runtime_error {
    explicit InvalidSchedule(const std::string& what) : std::runtime_error(what) {}
};

struct ScheduleMismatch : std::runtime_error {
    explicit ScheduleMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct LengthMismatch : std::runtime_error {
    explicit LengthMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace drsubmax
