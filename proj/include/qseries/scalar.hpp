#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qs {

/// Arbitrary-precision rational, always canonical (lowest terms, positive denominator).
using ExactScalar = mpq_class;

inline ExactScalar make_scalar(long num, long den = 1)
{
    ExactScalar r{mpz_class(num), mpz_class(den)};
    r.canonicalize();
    return r;
}

/// "p/q" or "p"; parses the same.
std::string to_string(const ExactScalar& s);
ExactScalar parse_scalar(std::string_view text);

}  // namespace qs
