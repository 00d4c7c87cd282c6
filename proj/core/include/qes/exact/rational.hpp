#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace qes::exact {

// Arbitrary-precision rational. mpq_class keeps values canonical (reduced,
// positive denominator) as long as they are built through its arithmetic or
// through make_rational below.
using BigRat = mpq_class;
using BigInt = mpz_class;

BigRat make_rational(long num, long den = 1);

// Parses "3", "-7/12", "+4". Throws std::invalid_argument on malformed text
// or a zero denominator.
BigRat parse_rational(std::string_view text);

// "p/q" or "p" when q == 1.
std::string to_string(const BigRat& r);

double to_double(const BigRat& r);

}  // namespace qes::exact
