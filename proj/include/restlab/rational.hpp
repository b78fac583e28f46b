#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "restlab/errors.hpp"

namespace restlab {

// Arbitrary-precision rational: denominators like 188 and 135 must stay exact
// through chained envelope arithmetic, so doubles are never an option here.
using Rat = boost::multiprecision::cpp_rational;

// Build n/d without tripping cpp_rational's non-canonical-ctor restrictions
// (its two-argument constructor rejects negative denominators).
inline Rat rat(long long n, long long d = 1) {
  if (d == 0) fail(Err::DivisionByZero, "rational with zero denominator");
  return Rat(n) / Rat(d);
}

// Accepts "p", "-p", "p/q" with optional sign on either part.
Rat parse_rat(const std::string& s);

// Canonical "p/q", or just "p" when the denominator is one.
std::string rat_string(const Rat& r);

double rat_double(const Rat& r);

}  // namespace restlab
