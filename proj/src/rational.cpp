#include "nuspread/rational.hpp"

#include <cctype>
#include <cmath>

#include "nuspread/error.hpp"

namespace nuspread {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw InvalidArgument("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    std::string num_digits = (!num.empty() && (num[0] == '-' || num[0] == '+')) ? num.substr(1) : num;
    if (!all_digits(num_digits) || !all_digits(den)) {
      throw InvalidArgument("malformed rational literal '" + s + "'");
    }
    BigInt d(den);
    if (d == 0) throw InvalidArgument("zero denominator in '" + s + "'");
    Rational r(BigInt(num[0] == '+' ? num.substr(1) : num), d);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string::npos) {
    std::string exp_part = body.substr(e + 1);
    body = body.substr(0, e);
    std::string exp_digits =
        (!exp_part.empty() && (exp_part[0] == '-' || exp_part[0] == '+')) ? exp_part.substr(1) : exp_part;
    if (!all_digits(exp_digits) || exp_digits.size() > 6) {
      throw InvalidArgument("malformed exponent in '" + s + "'");
    }
    exponent = std::stol(exp_part);
  }
  std::string int_part = body;
  std::string frac_part;
  if (auto dot = body.find('.'); dot != std::string::npos) {
    int_part = body.substr(0, dot);
    frac_part = body.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) throw InvalidArgument("malformed number '" + s + "'");
  if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw InvalidArgument("malformed number '" + s + "'");
  }
  BigInt mantissa(int_part.empty() ? std::string("0") : int_part);
  if (!frac_part.empty()) mantissa = mantissa * pow10(frac_part.size()) + BigInt(frac_part);
  long scale = exponent - static_cast<long>(frac_part.size());
  Rational r;
  if (scale >= 0) {
    r = Rational(mantissa * pow10(static_cast<unsigned long>(scale)));
  } else {
    r = Rational(mantissa, pow10(static_cast<unsigned long>(-scale)));
    r.canonicalize();
  }
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const BigInt& value) { return value.get_str(); }

Rational from_double(double value) {
  if (!std::isfinite(value)) throw InvalidArgument("cannot convert non-finite double to rational");
  Rational r(value);
  r.canonicalize();
  return r;
}

Rational pow(const Rational& base, unsigned long exponent) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  r.canonicalize();
  return r;
}

}  // namespace nuspread
