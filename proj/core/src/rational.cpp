#include "coalkit/rational.hpp"

#include <cctype>
#include <ostream>

#include "coalkit/errors.hpp"

namespace coalkit {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational::Rational(long num, long den) : v_(num, den) {
  if (den == 0) throw ParseError("rational with zero denominator");
  v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  std::string_view digits = num;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+'))
    digits.remove_prefix(1);
  if (!all_digits(digits) || !all_digits(den))
    throw ParseError("bad rational literal: '" + std::string(text) + "'");
  mpq_class v(std::string(num) + "/" + std::string(den));
  if (sgn(v.get_den()) == 0)
    throw ParseError("bad rational literal: '" + std::string(text) + "' (zero denominator)");
  v.canonicalize();
  return Rational(std::move(v));
}

std::string Rational::str() const { return v_.get_str(); }

Rational Rational::abs() const { return Rational(mpq_class(::abs(v_))); }

Rational Rational::operator-() const { return Rational(mpq_class(-v_)); }

Rational& Rational::operator+=(const Rational& o) {
  v_ += o.v_;
  return *this;
}

Rational& Rational::operator-=(const Rational& o) {
  v_ -= o.v_;
  return *this;
}

Rational& Rational::operator*=(const Rational& o) {
  v_ *= o.v_;
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ParseError("rational division by zero");
  v_ /= o.v_;
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.v_; }

Rational Rational::pow2(unsigned e) {
  mpz_class z;
  mpz_ui_pow_ui(z.get_mpz_t(), 2, e);
  return Rational(mpq_class(z));
}

}  // namespace coalkit
