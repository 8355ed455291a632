#include "eeinv/rational.hpp"

#include "eeinv/errors.hpp"

#include <cctype>

namespace eeinv {

std::string format_rational(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

namespace {

bool is_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den) || den.front() == '-' || den.front() == '+')
    throw DocumentError("", "malformed rational '" + std::string(text) + "'");
  boost::multiprecision::mpz_int n(std::string(num.front() == '+' ? num.substr(1) : num));
  boost::multiprecision::mpz_int d{std::string(den)};
  if (d == 0) throw DocumentError("", "zero denominator in '" + std::string(text) + "'");
  return Rational(n, d);
}

}  // namespace eeinv
