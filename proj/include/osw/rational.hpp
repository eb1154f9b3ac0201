#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace osw {

// Exact nonnegative-or-signed rational value. All core computations are
// exact; floats appear only in Monte Carlo reporting.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Parses "3", "-0.25", "1/2", "7/4" into an exact rational.
Rat parse_rat(const std::string& text);

// Serializes as "p" or "p/q" with canonical sign.
std::string rat_str(const Rat& value);

// Closest double, for statistical reporting only.
inline double rat_double(const Rat& value) { return value.get_d(); }

}  // namespace osw
