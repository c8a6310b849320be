#include "kzmc/rational.hpp"

#include <cctype>

#include "kzmc/errors.hpp"

namespace kzmc {

namespace {

std::size_t scan_digits(std::string_view text, std::size_t pos) {
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  return pos;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t begin = 0;
  std::size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;

  std::size_t pos = begin;
  bool negative = false;
  if (pos < end && (text[pos] == '-' || text[pos] == '+')) negative = text[pos++] == '-';
  const std::size_t num_end = scan_digits(text.substr(0, end), pos);
  if (num_end == pos) throw parse_error("expected digits in rational '" + std::string(text) + "'", 1, pos + 1);
  BigInt num(std::string(text.substr(pos, num_end - pos)));
  BigInt den(1);
  pos = num_end;
  if (pos < end && text[pos] == '/') {
    ++pos;
    const std::size_t den_end = scan_digits(text.substr(0, end), pos);
    if (den_end == pos) throw parse_error("expected denominator in rational '" + std::string(text) + "'", 1, pos + 1);
    den = BigInt(std::string(text.substr(pos, den_end - pos)));
    if (den == 0) throw parse_error("zero denominator in rational '" + std::string(text) + "'", 1, pos + 1);
    pos = den_end;
  }
  if (pos != end) throw parse_error("unexpected character in rational '" + std::string(text) + "'", 1, pos + 1);
  Rational value(num, den);
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  const BigInt num = boost::multiprecision::numerator(value);
  const BigInt den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace kzmc
