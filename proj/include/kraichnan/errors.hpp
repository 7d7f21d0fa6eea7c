#pragma once

#include <stdexcept>
#include <string>

namespace kraichnan {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad argument values (negative times, out-of-range orders, ...).
struct domain_error : error {
    using error::error;
};

// API misuse: wrong kernel family for an operation, malformed kernel JSON.
struct usage_error : error {
    using error::error;
};

// Deliberate caps exceeded (pairing enumeration order, integration order).
struct resource_error : error {
    using error::error;
};

// Numerical failures during a computation.
struct numeric_error : error {
    using error::error;
};

struct overflow_error : numeric_error {
    using numeric_error::numeric_error;
};

struct divergence_error : numeric_error {
    using numeric_error::numeric_error;
};

struct bracket_error : numeric_error {
    using numeric_error::numeric_error;
};

struct pole_error : numeric_error {
    using numeric_error::numeric_error;
};

struct not_psd_error : numeric_error {
    using numeric_error::numeric_error;
};

struct step_size_error : numeric_error {
    using numeric_error::numeric_error;
};

} // namespace kraichnan
