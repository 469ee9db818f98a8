#ifndef RBFWT_ERRORS_HPP
#define RBFWT_ERRORS_HPP

#include <cstdio>
#include <stdexcept>
#include <string>

namespace rbfwt {

namespace detail {

inline std::string num_str(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

// Base class for everything thrown by this library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Argument outside an operation's documented domain.
struct domain_error : error {
    using error::error;
};

// An integrand produced a non-finite value; the message names the node.
struct evaluation_error : error {
    using error::error;
};

// Semi-infinite integration failed to meet its tolerance within the panel budget.
struct divergence_error : error {
    using error::error;
};

// A transform calibration failed its round-trip verification.
struct calibration_error : error {
    double measured_discrepancy;
    calibration_error(const std::string& msg, double measured)
        : error(msg), measured_discrepancy(measured) {}
};

// A linear solve is unusable; carries the condition estimate.
struct solver_error : error {
    double condition_estimate;
    solver_error(const std::string& msg, double cond)
        : error(msg), condition_estimate(cond) {}
};

} // namespace rbfwt

#endif
