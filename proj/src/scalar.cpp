#include "qalg/scalar.hpp"

#include <regex>

namespace qalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic " + std::to_string(p) + " is not prime");
  return {Kind::Prime, p};
}

std::string Field::str() const { return kind == Kind::Rationals ? "Q" : "GF(" + std::to_string(p) + ")"; }

namespace {

// Accepts "n", "n/d" and "n.ddd" with an optional sign.
mpq_class parse_exact(const std::string& s) {
  static const std::regex frac(R"(\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*)");
  static const std::regex dec(R"(\s*([+-]?)(\d*)\.(\d+)\s*)");
  std::smatch m;
  if (std::regex_match(s, m, frac)) {
    std::string n = m[1].str();
    if (n[0] == '+') n.erase(0, 1);
    mpz_class num(n, 10), den(m[2].matched ? m[2].str() : "1", 10);
    if (den == 0) throw std::invalid_argument("zero denominator in coefficient '" + s + "'");
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, dec)) {
    std::string digits = m[2].str() + m[3].str();
    mpz_class num(digits.empty() ? "0" : digits, 10), den = 1;
    for (size_t i = 0; i < m[3].length(); ++i) den *= 10;
    if (m[1].str() == "-") num = -num;
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  throw std::invalid_argument("cannot parse coefficient '" + s + "'");
}

}  // namespace

Rational Rational::parse(const std::string& s) { return Rational(parse_exact(s)); }

void Zp::set_modulus(std::uint32_t p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  p_ = p;
}

Zp Zp::inverse() const {
  if (v_ == 0) throw std::domain_error("division by zero");
  long long a = v_, m = p_, x0 = 1, x1 = 0;
  while (m) {
    long long q = a / m;
    a -= q * m;
    std::swap(a, m);
    x0 -= q * x1;
    std::swap(x0, x1);
  }
  return Zp(x0);
}

Zp Zp::parse(const std::string& s) {
  if (p_ == 0) throw std::logic_error("Zp modulus not set");
  mpq_class q = parse_exact(s);
  mpz_class pm(p_);
  mpz_class n = q.get_num() % pm, d = q.get_den() % pm;
  if (d == 0) throw std::invalid_argument("coefficient '" + s + "' has denominator divisible by p");
  return Zp(n.get_si()) / Zp(d.get_si());
}

}  // namespace qalg
