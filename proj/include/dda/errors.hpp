#ifndef DDA_ERRORS_HPP
#define DDA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dda {

// Bad arguments (dimension mismatch, zero vector, out-of-range parameter).
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// Point outside the evaluation domain of a manifold or shift.
struct domain_error : std::domain_error {
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

// Enumeration would exceed integer / memory limits.
struct capacity_error : std::length_error {
    explicit capacity_error(const std::string& what) : std::length_error(what) {}
};

// Evaluation failed (non-finite value, vanishing psi, ...).
struct evaluation_error : std::runtime_error {
    explicit evaluation_error(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition does not hold for the given inputs.
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// An internal construction step failed where theory says it cannot.
struct construction_error : std::runtime_error {
    explicit construction_error(const std::string& what) : std::runtime_error(what) {}
};

// Root localization preconditions not met.
struct localization_error : std::runtime_error {
    explicit localization_error(const std::string& what) : std::runtime_error(what) {}
};

// Grid too coarse for the requested scales.
struct resolution_error : std::runtime_error {
    explicit resolution_error(const std::string& what) : std::runtime_error(what) {}
};

// Configuration text could not be parsed; carries line and column.
struct config_error : std::runtime_error {
    int line;
    int column;
    config_error(const std::string& what, int line_, int col_)
        : std::runtime_error(what + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_), column(col_) {}
};

} // namespace dda

#endif
