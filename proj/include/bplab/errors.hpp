#pragma once

#include <stdexcept>
#include <string>

namespace bplab {

/// Invalid experiment configuration (missing key, bad value, empty grid).
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Degenerate numerical input, e.g. a zero variance entering a log-slope fit.
class NumericalError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace bplab
