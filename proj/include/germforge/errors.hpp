#pragma once

#include <stdexcept>
#include <string>

namespace germforge {

// Base class for all library errors.
struct germ_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: wrong parity, order mismatch, non-invertible linear part, ...
struct domain_error : germ_error {
    using germ_error::germ_error;
};

// A numerical stage failed (Newton divergence, iteration cap, NaN, ...).
// Carries the name of the failing stage so the CLI can print a stage trace.
struct pipeline_error : germ_error {
    pipeline_error(std::string stage_, const std::string& what_)
        : germ_error("[" + stage_ + "] " + what_), stage(std::move(stage_)) {}
    std::string stage;
};

// The input does not determine an answer at the available jet order.
struct undetermined_error : germ_error {
    using germ_error::germ_error;
};

} // namespace germforge
