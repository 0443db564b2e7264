#ifndef BINROW_BIGINT_HPP
#define BINROW_BIGINT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace binrow {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Coefficient domain of all series and moment tables.
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when a desk-scale size guard is violated (distinct from bad
/// arguments, which use std::invalid_argument).
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "p/q" rendering, denominator always present ("0/1", "18/13", ...).
std::string to_fraction_string(const Rational& r);

/// Nearest double; exact for anything a double can hold.
double to_double(const Rational& r);

}  // namespace binrow

#endif
