#pragma once

#include <stdexcept>
#include <string>

namespace dhsim {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GapError : std::runtime_error {
    explicit GapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonMonotonicError : std::runtime_error {
    explicit NonMonotonicError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoOverlapError : std::runtime_error {
    explicit NoOverlapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct AxisMismatchError : std::runtime_error {
    explicit AxisMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

// A clearing problem came back infeasible even though waste and curtailment
// variables should make it always satisfiable; indicates broken carried state.
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dhsim
