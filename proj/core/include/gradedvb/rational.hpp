#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace gvb {

// Exact scalar field. Values are kept canonical (reduced, positive
// denominator) by every helper in this library.
using Rational = mpq_class;
using Vector = std::vector<Rational>;

// "num/den" with an explicit denominator, e.g. "3/1", "-1/2".
std::string to_string(const Rational& q);

// Accepts "num/den" or a bare integer. Throws ParseError.
Rational parse_rational(const std::string& text);

bool is_zero(const Vector& v);

}  // namespace gvb
