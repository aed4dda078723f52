#include "norden/numkit/rational.hpp"

#include <cctype>
#include <string>

#include "norden/numkit/errors.hpp"

namespace norden {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParameterError("empty rational literal");

  bool negative = false;
  std::string body = s;
  if (body[0] == '-' || body[0] == '+') {
    negative = body[0] == '-';
    body = body.substr(1);
  }

  Rational q;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParameterError("malformed rational: " + s);
    mpz_class n(num, 10), d(den, 10);
    if (d == 0) throw ParameterError("zero denominator: " + s);
    q = Rational(n, d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot);
    std::string frac = body.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw ParameterError("malformed decimal: " + s);
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class n(whole + frac, 10);
    q = Rational(n, scale);
  } else {
    if (!all_digits(body)) throw ParameterError("malformed integer: " + s);
    q = Rational(mpz_class(body, 10));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

bool is_perfect_square(const Rational& q) {
  if (sgn(q) < 0) return false;
  Rational c = q;
  c.canonicalize();
  return mpz_perfect_square_p(c.get_num_mpz_t()) != 0 && mpz_perfect_square_p(c.get_den_mpz_t()) != 0;
}

Rational exact_sqrt(const Rational& q) {
  if (!is_perfect_square(q)) throw StructuralError("no exact square root of " + to_string(q));
  Rational c = q;
  c.canonicalize();
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), c.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), c.get_den_mpz_t());
  return Rational(n, d);
}

}  // namespace norden
