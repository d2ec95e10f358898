#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <string>

namespace impdimer {

// Exact arithmetic used by every determinant formula. Canonical form
// (reduced, positive denominator) is maintained by the backend.
using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

inline Int numerator_of(const Rational& q) {
  return Int(boost::multiprecision::numerator(q));
}

inline Int denominator_of(const Rational& q) {
  return Int(boost::multiprecision::denominator(q));
}

inline bool is_integer(const Rational& q) { return denominator_of(q) == 1; }

// Exact conversion; throws if q has a nontrivial denominator.
Int to_integer(const Rational& q);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Int abs(const Int& n) { return n < 0 ? Int(-n) : n; }

std::string to_string(const Rational& q);
std::string to_string(const Int& n);

}  // namespace impdimer
