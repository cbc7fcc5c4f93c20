#include "ergolab/rational.hpp"

#include "ergolab/errors.hpp"

namespace ergolab {

Rational::Rational(long num, long den) {
  if (den == 0) throw InvalidInput("zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InvalidInput("division by zero");
  v_ /= o.v_;
  return *this;
}

static bool integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!integer_text(num) || !integer_text(den) || den[0] == '-' || den[0] == '+')
    throw InvalidInput("not a rational: \"" + std::string(text) + "\"");
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw InvalidInput("zero denominator in \"" + std::string(text) + "\"");
  mpq_class q(n, d);
  q.canonicalize();
  return Rational(q);
}

std::string Rational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

std::size_t Rational::hash() const {
  std::size_t h = std::hash<std::string>{}(v_.get_num().get_str());
  return h ^ (std::hash<std::string>{}(v_.get_den().get_str()) * 0x9e3779b97f4a7c15ULL);
}

Rational pow(const Rational& base, unsigned exp) {
  Rational r(1);
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace ergolab
