#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace padic {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// A validated prime. Every norm computation takes one explicitly; values
/// never store their prime.
class Prime {
public:
  static constexpr std::uint64_t kTrialDivisionLimit = 1'000'000;

  /// Throws std::invalid_argument unless p is prime. Primality is decided by
  /// trial division up to 10^6, so p itself must be below 10^12.
  explicit Prime(std::uint64_t p);

  std::uint64_t value() const { return value_; }
  operator std::uint64_t() const { return value_; }

private:
  std::uint64_t value_;
};

bool is_prime(std::uint64_t n);

/// Nonarchimedean norm value p^(-exponent); an infinite exponent encodes 0.
class NormExp {
public:
  NormExp() = default;  // the value 0
  explicit NormExp(Rational exponent) : exponent_(std::move(exponent)) {}

  static NormExp zero() { return NormExp(); }
  static NormExp one() { return NormExp(Rational(0)); }

  bool is_zero() const { return !exponent_.has_value(); }
  /// Precondition: !is_zero().
  const Rational& exponent() const { return *exponent_; }

  /// Product of values.
  friend NormExp operator*(const NormExp& a, const NormExp& b);
  /// Raise the value to a nonnegative rational power.
  NormExp pow(const Rational& c) const;

  /// Compares norm VALUES: a < b iff |a| < |b|.
  friend std::strong_ordering operator<=>(const NormExp& a, const NormExp& b);
  friend bool operator==(const NormExp& a, const NormExp& b) = default;

  std::string to_string() const;

private:
  std::optional<Rational> exponent_;
};

/// Supremum of two norm values (minimum of exponents).
NormExp max(const NormExp& a, const NormExp& b);
NormExp min(const NormExp& a, const NormExp& b);

std::ostream& operator<<(std::ostream& os, const NormExp& n);

/// v_p(n) for a nonzero integer n.
long p_valuation(const Integer& n, const Prime& p);
/// v_p(x); std::nullopt encodes +infinity (x == 0).
std::optional<long> p_valuation(const Rational& x, const Prime& p);

NormExp norm_value(const Rational& x, const Prime& p);

/// v_p(i!) by Legendre's formula.
std::uint64_t factorial_valuation(std::uint64_t i, const Prime& p);

Rational factorial(unsigned i);

/// "num/den" with den omitted when 1.
std::string to_string(const Rational& x);
/// Parses "a", "-a" or "a/b". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

}  // namespace padic
