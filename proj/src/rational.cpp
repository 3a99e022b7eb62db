#include "gpd/rational.hpp"

#include <algorithm>
#include <cctype>

#include "gpd/errors.hpp"

namespace gpd {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  if (!all_digits(body)) throw ParseError("not a rational number: '" + std::string(whole) + "'");
  std::string str(s);
  if (str.front() == '+') str.erase(0, 1);
  return Integer(str, 10);
}

Integer power_of_ten(unsigned long exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw ParseError("not a rational number: '" + std::string(text) + "'");
    Integer den(std::string(den_text), 10);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }

  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    std::string_view exp_text = text.substr(e + 1);
    Integer exp_value = parse_integer(exp_text, text);
    if (!exp_value.fits_slong_p() || abs(exp_value) > 4096) throw ParseError("exponent out of range in '" + std::string(text) + "'");
    exponent = exp_value.get_si();
  }

  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long fractional = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view ip = mantissa.substr(0, dot);
    std::string_view fp = mantissa.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw ParseError("not a rational number: '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    fractional = static_cast<long>(fp.size());
  } else {
    if (!all_digits(mantissa)) throw ParseError("not a rational number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  Integer num(digits, 10);
  if (negative) num = -num;
  long scale = exponent - fractional;
  Rational r;
  if (scale >= 0) {
    r = Rational(num * power_of_ten(static_cast<unsigned long>(scale)));
  } else {
    r = Rational(num, power_of_ten(static_cast<unsigned long>(-scale)));
  }
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_str(10);
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::vector<Rational> sorted_unique(std::vector<Rational> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

std::size_t count_at_most(const std::vector<Rational>& sorted, const Rational& value) {
  return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), value) - sorted.begin());
}

std::vector<std::pair<Integer, unsigned>> factorize(Integer n) {
  if (n <= 0) throw ValidationError("factorize: argument must be positive");
  std::vector<std::pair<Integer, unsigned>> out;
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0;
}

}  // namespace gpd
