// Exact rational scalars. All chain-level arithmetic in this project is
// over Q; floating point appears only in diagnostics.

#ifndef STRATSIG_RATIONAL_HPP
#define STRATSIG_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace stratsig {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q", and a leading minus sign.
inline Rational rat_parse(const std::string& s)
{
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::runtime_error("bad rational literal: " + s);
    r.canonicalize();
    return r;
}

inline std::string rat_str(const Rational& r)
{
    return r.get_str();
}

inline int sign(const Rational& r) { return sgn(r); }

} // namespace stratsig

#endif
