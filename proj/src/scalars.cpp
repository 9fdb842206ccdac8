#include "padic/scalars.hpp"

#include <gmp.h>

#include <charconv>

namespace padic {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= Prime::kTrialDivisionLimit && d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(std::uint64_t p) : value_(p) {
  if (p >= Prime::kTrialDivisionLimit * Prime::kTrialDivisionLimit)
    throw std::invalid_argument("prime " + std::to_string(p) + " exceeds the trial-division range");
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

NormExp operator*(const NormExp& a, const NormExp& b) {
  if (a.is_zero() || b.is_zero()) return NormExp::zero();
  return NormExp(a.exponent() + b.exponent());
}

NormExp NormExp::pow(const Rational& c) const {
  if (c < 0) throw std::invalid_argument("NormExp::pow: negative power");
  if (is_zero()) return c == 0 ? NormExp::one() : NormExp::zero();
  return NormExp(exponent() * c);
}

std::strong_ordering operator<=>(const NormExp& a, const NormExp& b) {
  if (a.is_zero() || b.is_zero()) {
    if (a.is_zero() && b.is_zero()) return std::strong_ordering::equal;
    return a.is_zero() ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  // Larger exponent means smaller value.
  if (a.exponent() == b.exponent()) return std::strong_ordering::equal;
  return a.exponent() > b.exponent() ? std::strong_ordering::less : std::strong_ordering::greater;
}

NormExp max(const NormExp& a, const NormExp& b) { return a < b ? b : a; }
NormExp min(const NormExp& a, const NormExp& b) { return a < b ? a : b; }

std::string NormExp::to_string() const { return is_zero() ? "inf" : padic::to_string(exponent()); }

std::ostream& operator<<(std::ostream& os, const NormExp& n) { return os << n.to_string(); }

long p_valuation(const Integer& n, const Prime& p) {
  if (n == 0) throw std::invalid_argument("p_valuation of zero integer");
  mpz_t rest;
  mpz_init(rest);
  mpz_t prime;
  mpz_init_set_ui(prime, static_cast<unsigned long>(p.value()));
  const auto count = mpz_remove(rest, n.backend().data(), prime);
  mpz_clear(prime);
  mpz_clear(rest);
  return static_cast<long>(count);
}

std::optional<long> p_valuation(const Rational& x, const Prime& p) {
  if (x == 0) return std::nullopt;
  return p_valuation(Integer(numerator(x)), p) - p_valuation(Integer(denominator(x)), p);
}

NormExp norm_value(const Rational& x, const Prime& p) {
  auto v = p_valuation(x, p);
  return v ? NormExp(Rational(*v)) : NormExp::zero();
}

std::uint64_t factorial_valuation(std::uint64_t i, const Prime& p) {
  std::uint64_t total = 0;
  for (std::uint64_t q = i / p.value(); q > 0; q /= p.value()) total += q;
  return total;
}

Rational factorial(unsigned i) {
  Integer f = 1;
  for (unsigned k = 2; k <= i; ++k) f *= k;
  return Rational(f);
}

std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::string_view digits = text;
  if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
  if (digits.empty()) throw std::invalid_argument("malformed rational \"" + std::string(whole) + "\"");
  for (char c : digits) {
    if (c < '0' || c > '9') throw std::invalid_argument("malformed rational \"" + std::string(whole) + "\"");
  }
  return Integer(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text.front() == '-')
    throw std::invalid_argument("malformed rational \"" + std::string(text) + "\": negative denominator");
  Integer den = parse_integer(den_text, text);
  if (den == 0) throw std::invalid_argument("zero denominator in \"" + std::string(text) + "\"");
  return Rational(num, den);
}

}  // namespace padic
