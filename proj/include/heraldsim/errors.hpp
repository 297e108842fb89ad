#pragma once

#include <stdexcept>
#include <string>

namespace heraldsim {

// Invalid argument errors use std::invalid_argument directly.

/// Grid too coarse or too short to resolve a time scale.
class ResolutionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A pulse is not contained in the simulation window.
class ContainmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation applied to a value in the wrong state (e.g. filtering twice).
class StateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Detection at the requested instant has negligible probability.
class NoHeraldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace heraldsim
