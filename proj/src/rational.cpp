#include "fracext/rational.hpp"

#include "fracext/error.hpp"

#include <cctype>

namespace fracext {

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
  BigInt v = 0;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i])))
      throw InvalidArgument("malformed rational '" + std::string(whole) + "'");
    v = v * 10 + (s[i] - '0');
  }
  return neg ? BigInt(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(trim(s.substr(0, slash)), text);
    BigInt den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    if (ip.empty() && fp.empty()) throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    BigInt whole = ip.empty() ? BigInt(0) : parse_integer(ip, text);
    BigInt frac = fp.empty() ? BigInt(0) : parse_integer(fp, text);
    if (!fp.empty() && (fp[0] == '-' || fp[0] == '+'))
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(fp.size()));
    Rational r = Rational(whole) + Rational(frac, scale);
    return neg ? Rational(-r) : r;
  }
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

std::string to_string(const BigInt& n) { return n.str(); }

double to_double(const Rational& r) { return r.convert_to<double>(); }
double to_double(const BigInt& n) { return n.convert_to<double>(); }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceLimit("int64 overflow in endpoint arithmetic");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceLimit("int64 overflow in endpoint arithmetic");
  return out;
}

}  // namespace fracext
