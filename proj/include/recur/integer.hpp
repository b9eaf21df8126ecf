#pragma once

#include <gmpxx.h>

#include <string>

namespace recur {

using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_decimal(const Integer& v) { return v.get_str(10); }

// "p/q" in lowest terms, or just "p" when q == 1.
inline std::string to_decimal(const Rational& v) {
    Rational c = v;
    c.canonicalize();
    return c.get_str(10);
}

inline bool is_integral(const Rational& v) { return v.get_den() == 1; }

} // namespace recur
