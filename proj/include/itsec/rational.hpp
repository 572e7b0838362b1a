#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

#include "itsec/error.hpp"

namespace itsec {

/// Exact rational scalar. All probability arithmetic in rational mode runs on
/// this type; results are canonical (gcd-reduced, positive denominator).
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw Error(Errc::invalid_argument, "rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "num", "num/den", or "-num/den" (arbitrary precision).
Rat rat_parse(std::string_view text);

/// Canonical text form: "num" when den == 1, else "num/den".
std::string rat_str(const Rat& r);

inline double rat_to_double(const Rat& r) { return r.get_d(); }

/// Exact conversion; every finite double is a dyadic rational.
Rat rat_from_double(double x);

} // namespace itsec
