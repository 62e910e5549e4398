#include "toblbox/rational.hpp"

#include <algorithm>
#include <cctype>

#include "toblbox/errors.hpp"

namespace tobl {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  if (s.empty()) throw ParseError("empty integer in rational \"" + std::string(whole) + "\"");
  std::string_view digits = s;
  if (digits.front() == '+' || digits.front() == '-') digits.remove_prefix(1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    throw ParseError("malformed rational \"" + std::string(whole) + "\"");
  }
  return Integer(std::string(s));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = trim(text);
  auto slash = body.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_integer(body, text));
  }
  Integer num = parse_integer(body.substr(0, slash), text);
  Integer den = parse_integer(body.substr(slash + 1), text);
  if (den == 0) throw ParseError("zero denominator in rational \"" + std::string(text) + "\"");
  return Rational(num) / Rational(den);
}

std::string to_string(const Rational& value) {
  return value.str();  // gmp prints "num/den", or "num" when den == 1
}

}  // namespace tobl
