#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace fracext {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", integers and plain decimals ("0.6" -> 3/5).
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);
std::string to_string(const BigInt& n);
double to_double(const Rational& r);
double to_double(const BigInt& n);

// Checked int64 arithmetic; throws ResourceLimit on overflow.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

}  // namespace fracext
