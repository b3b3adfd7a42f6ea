#include "lyapcert/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace lyapcert {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational rational_from_string(const std::string& s) {
  std::string t = s;
  // strip surrounding whitespace
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  if (t.empty()) throw std::invalid_argument("empty rational literal");

  bool negative = false;
  if (t[0] == '+' || t[0] == '-') {
    negative = (t[0] == '-');
    t.erase(t.begin());
  }
  if (t.empty()) throw std::invalid_argument("bare sign is not a rational literal");

  Rational value;
  if (auto slash = t.find('/'); slash != std::string::npos) {
    std::string num = t.substr(0, slash);
    std::string den = t.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed fraction literal: " + s);
    BigInt d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    value = Rational(BigInt(num), d);
  } else if (auto dot = t.find('.'); dot != std::string::npos) {
    std::string ip = t.substr(0, dot);
    std::string fp = t.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (fp.empty()) fp = "0";
    if (!all_digits(ip) || !all_digits(fp))
      throw std::invalid_argument("malformed decimal literal: " + s);
    BigInt scale = 1;
    for (size_t i = 0; i < fp.size(); ++i) scale *= 10;
    value = Rational(BigInt(ip) * scale + BigInt(fp), scale);
  } else {
    if (!all_digits(t)) throw std::invalid_argument("malformed integer literal: " + s);
    value = Rational(BigInt(t));
  }
  return negative ? Rational(-value) : value;
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(x);  // exact: doubles are dyadic rationals
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational rational_pow(const Rational& r, int k) {
  if (k < 0) throw std::invalid_argument("negative exponent");
  Rational result = 1, base = r;
  while (k > 0) {
    if (k & 1) result *= base;
    base *= base;
    k >>= 1;
  }
  return result;
}

}  // namespace lyapcert
