#pragma once

#include <stdexcept>

namespace pilotadapt {

/// Invalid pilot configuration, feasible set, or grid dimensions.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed feedback or a receive window that does not match the active configuration.
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace pilotadapt
