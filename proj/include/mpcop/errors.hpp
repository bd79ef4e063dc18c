#ifndef MPCOP_ERRORS_HPP
#define MPCOP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mpcop {

// Grid too coarse to separate all discontinuities of the iterated map.
struct resolution_error : std::runtime_error {
    explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Orbit collapsed to too few distinct values to carry a measure.
struct degenerate_orbit_error : std::runtime_error {
    explicit degenerate_orbit_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct estimation_error : std::runtime_error {
    explicit estimation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Neither branch of the lag-1 scatter holds the two points a line fit needs.
struct insufficient_data_error : estimation_error {
    explicit insufficient_data_error(const std::string& msg) : estimation_error(msg) {}
};

// Fitted line produced a discontinuity point outside (0,1).
struct invalid_estimate_error : estimation_error {
    explicit invalid_estimate_error(const std::string& msg) : estimation_error(msg) {}
};

// All abscissae on the fitted branch coincide.
struct singular_fit_error : estimation_error {
    explicit singular_fit_error(const std::string& msg) : estimation_error(msg) {}
};

// Requested lag or dimension exceeds the documented resource caps.
struct dimension_cap_error : std::runtime_error {
    explicit dimension_cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace mpcop

#endif  // MPCOP_ERRORS_HPP
