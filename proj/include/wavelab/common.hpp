#ifndef WAVELAB_COMMON_HPP
#define WAVELAB_COMMON_HPP

#include <stdexcept>
#include <string>

namespace wavelab {

// Run-terminating conditions that are caller errors, not data.
struct CoefficientBoundError : std::runtime_error {
    explicit CoefficientBoundError(const std::string& what) : std::runtime_error(what) {}
};

struct ResolutionError : std::runtime_error {
    explicit ResolutionError(const std::string& what) : std::runtime_error(what) {}
};

struct SequencingError : std::runtime_error {
    explicit SequencingError(const std::string& what) : std::runtime_error(what) {}
};

struct CannotScaleError : std::runtime_error {
    explicit CannotScaleError(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace wavelab

#endif
