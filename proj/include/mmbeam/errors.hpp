#pragma once

#include <stdexcept>
#include <string>

namespace mmbeam {

// Argument/contract violations.
struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonFinite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BitsOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InstanceTooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Runtime conditions raised by the design and metric stages.
struct DegenerateChannel : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpanCollapse : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularCombiner : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroCombinerColumn : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RankDeficient : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Front-end errors.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace mmbeam
