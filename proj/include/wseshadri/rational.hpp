#pragma once

#include <cstdio>
#include <string>

#include <gmpxx.h>

#include "wseshadri/errors.hpp"

namespace wseshadri {

/* The universal exact scalar of the combinatorial core. mpq_class already
 * maintains the canonical form (positive denominator, reduced fraction)
 * after every operation, which is exactly the invariant we need. */
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    require(den != 0, "ZeroDenominator", "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/* Serialized form is always "p/q" with q > 0, even when q = 1, so the
 * output grammar has a single production. */
inline std::string rat_str(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/* Accepts "p/q" or a bare integer "p". */
inline Rational rat_parse(const std::string& text) {
    Rational q;
    if (q.set_str(text, 10) != 0)
        fail("BadRational", "cannot parse rational '" + text + "'");
    require(q.get_den() != 0, "ZeroDenominator",
            "rational '" + text + "' has zero denominator");
    q.canonicalize();
    return q;
}

inline double rat_double(const Rational& q) { return q.get_d(); }

/* 17 significant digits: enough to round-trip any double. */
inline std::string float_str(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline int sign(const Rational& q) { return sgn(q); }

} // namespace wseshadri
