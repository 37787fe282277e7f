#include "hypersparse/rational.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hypersparse {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

mpz_class pow10(unsigned long exponent) {
  mpz_class result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("malformed number '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_number(text);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    bool negative = !num.empty() && num.front() == '-';
    if (negative || (!num.empty() && num.front() == '+')) num.remove_prefix(1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    mpz_class d{std::string(den), 10};
    if (d == 0) bad_number(text);
    Rational r(mpz_class(std::string(num), 10), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }

  std::string_view rest = text;
  bool negative = false;
  if (rest.front() == '-' || rest.front() == '+') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  long exponent = 0;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = rest.substr(e + 1);
    rest = rest.substr(0, e);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    if (!all_digits(exp_text) || exp_text.size() > 6) bad_number(text);
    exponent = std::stol(std::string(exp_text));
    if (exp_negative) exponent = -exponent;
  }

  std::string digits;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = rest.substr(0, dot);
    std::string_view frac_part = rest.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) bad_number(text);
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      bad_number(text);
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(rest)) bad_number(text);
    digits = std::string(rest);
  }

  Rational r{mpz_class(digits, 10)};
  if (exponent > 0) {
    r *= pow10(static_cast<unsigned long>(exponent));
  } else if (exponent < 0) {
    r /= pow10(static_cast<unsigned long>(-exponent));
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();

  // A canonical fraction has a finite decimal expansion iff its
  // denominator has no prime factors other than 2 and 5.
  mpz_class den = value.get_den();
  unsigned long twos = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(2).get_mpz_t());
  unsigned long fives = mpz_remove(den.get_mpz_t(), den.get_mpz_t(), mpz_class(5).get_mpz_t());
  if (den != 1) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
  }

  unsigned long places = std::max(twos, fives);
  mpz_class scaled = value.get_num() * pow10(places) / value.get_den();
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s = scaled.get_str();
  if (s.size() <= places) s.insert(0, places - s.size() + 1, '0');
  s.insert(s.size() - places, ".");
  return negative ? "-" + s : s;
}

Rational rational_from_decimal(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::invalid_argument("cannot format value");
  return parse_rational(std::string_view(buffer, static_cast<std::size_t>(end - buffer)));
}

Rational rational_rounded(double value, int digits) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  mpz_class scale = pow10(static_cast<unsigned long>(digits));
  Rational scaled = Rational(value) * scale;
  // round half up
  Rational shifted = scaled + Rational(1, 2);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  Rational r(q, scale);
  r.canonicalize();
  return r;
}

Rational floor_rational(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

}  // namespace hypersparse
