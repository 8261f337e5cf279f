#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "hopf/config.hpp"

namespace hopf {

using Int = mpz_class;
using Rat = mpq_class;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }

// Exact integer square root; nullopt when v is not a perfect square or < 0.
inline std::optional<Int> exact_isqrt(const Int& v) {
    if (sgn(v) < 0) return std::nullopt;
    if (!mpz_perfect_square_p(v.get_mpz_t())) return std::nullopt;
    Int r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

// The rational as an integer, if it is one.
inline std::optional<Int> as_integer(const Rat& r) {
    if (r.get_den() == 1) return r.get_num();
    return std::nullopt;
}

inline std::optional<long> as_long(const Rat& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p())
        return r.get_num().get_si();
    return std::nullopt;
}

// Always "p/q" with q >= 1, e.g. "-1/1", "3/2".
inline std::string rat_literal(const Rat& r) {
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Parses "p", "p/q" or "-p/q".  Throws parse_error on anything else.
inline Rat parse_rat(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw parse_error("bad rational literal: '" + s + "'");
    if (r.get_den() == 0) throw parse_error("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
}

}  // namespace hopf
