#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace lnd {

// Arbitrary-precision rational scalar. All coefficient arithmetic in the
// library is exact; there is no floating-point fallback anywhere.
using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// Parses "p" or "p/q" with optional leading '-'. Throws on malformed input
// or zero denominator.
inline Rat rat_parse(const std::string& s) {
    mpq_class r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator in rational literal: " + s);
    r.canonicalize();
    return r;
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline bool rat_is_one(const Rat& r) { return r == 1; }
inline bool rat_is_minus_one(const Rat& r) { return r == -1; }

}  // namespace lnd
