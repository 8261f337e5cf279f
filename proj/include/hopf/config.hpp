#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hopf {

// Base error type for everything thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A computation tried to leave the configured cyclotomic range.  This is the
// library's way of saying "this instance is too large for exact desk-scale
// arithmetic", not a bug.
struct conductor_overflow : error {
    explicit conductor_overflow(unsigned long n)
        : error("conductor overflow: " + std::to_string(n) +
                " exceeds the configured bound") {}
};

struct parse_error : error {
    using error::error;
};

// Violated operation precondition (caller error).
struct precondition_error : error {
    using error::error;
};

// An internal exact identity failed to hold; indicates a bug or an
// out-of-contract input that slipped past validation.
struct consistency_error : error {
    using error::error;
};

namespace config {

// Largest conductor N for which Q(zeta_N) arithmetic is attempted.
// Overridable via the HOPF_MAX_CONDUCTOR environment variable or directly.
inline unsigned long& max_conductor() {
    static unsigned long bound = [] {
        if (const char* env = std::getenv("HOPF_MAX_CONDUCTOR")) {
            unsigned long v = std::strtoul(env, nullptr, 10);
            if (v >= 1) return v;
        }
        return 100000UL;
    }();
    return bound;
}

// Exhaustive subset enumeration limit for fusion subcategory lattices.
inline constexpr int exhaustive_lattice_rank = 16;

// Hard cap on the number of simples for lattice enumeration.
inline constexpr int lattice_rank_bound = 22;

}  // namespace config

}  // namespace hopf
