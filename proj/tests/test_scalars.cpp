#include "doctest.h"
#include "oracles.hpp"

#include "padic/matrix.hpp"

using namespace padic;

TEST_CASE("prime validation rejects composites and accepts primes") {
  CHECK_NOTHROW(Prime(2));
  CHECK_NOTHROW(Prime(999983));
  CHECK_THROWS_AS(Prime(6), std::invalid_argument);
  CHECK_THROWS_AS(Prime(1), std::invalid_argument);
  CHECK_THROWS_AS(Prime(0), std::invalid_argument);
  CHECK(is_prime(1000003));
  CHECK_FALSE(is_prime(1000001));
}

TEST_CASE("p-adic valuation agrees with repeated division") {
  oracle::Random rng(11);
  for (std::uint64_t p : {2, 3, 5, 7}) {
    const Prime prime(p);
    for (int k = 0; k < 200; ++k) {
      const Rational x = rng.rational(p) * rng.rational(p) / rng.rational(p, false);
      CHECK(p_valuation(x, prime) == oracle::valuation(x, p));
    }
  }
  CHECK(p_valuation(Rational(0), Prime(3)) == std::nullopt);
  CHECK(*p_valuation(Rational(9, 2), Prime(3)) == 2);
  CHECK(*p_valuation(Rational(5, 12), Prime(2)) == -2);
}

TEST_CASE("norm values compare by value and multiply by adding exponents") {
  const NormExp half(Rational(1));  // 1/p
  const NormExp one = NormExp::one();
  CHECK(half < one);
  CHECK(NormExp::zero() < half);
  CHECK(max(half, one) == one);
  CHECK(min(half, NormExp::zero()).is_zero());
  CHECK((half * half).exponent() == 2);
  CHECK((half * NormExp::zero()).is_zero());
  CHECK(half.pow(Rational(1, 2)).exponent() == Rational(1, 2));
  CHECK(NormExp::zero().to_string() == "inf");
}

TEST_CASE("factorial valuation follows Legendre") {
  const Prime p(2);
  CHECK(factorial_valuation(64, p) == 63);
  CHECK(factorial_valuation(10, Prime(3)) == 4);
  for (unsigned i = 0; i < 40; ++i) CHECK(*p_valuation(factorial(i), p) == static_cast<long>(factorial_valuation(i, p)));
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(to_string(Rational(-4, 6)) == "-2/3");
  CHECK(to_string(Rational(5)) == "5");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("1/-2"), std::invalid_argument);
}

TEST_CASE("exact linear algebra over the rationals") {
  RationalMatrix j(3, 3);
  j << 0, 1, 0, 0, 0, 1, 0, 0, 0;
  CHECK(nilpotency_index(j) == 3);
  CHECK(nilpotency_index(RationalMatrix::Zero(2, 2)) == 1);
  CHECK(nilpotency_index(RationalMatrix::Identity(2, 2)) == 0);
  CHECK(rank(j) == 2);
  const RationalMatrix k = kernel(j);
  REQUIRE(k.cols() == 1);
  CHECK(is_zero(RationalMatrix(j * k)));

  oracle::Random rng(5);
  for (int t = 0; t < 20; ++t) {
    RationalMatrix m = rng.matrix(3, 3, 0);
    if (rank(m) < 3) continue;
    CHECK(m * inverse(m) == RationalMatrix::Identity(3, 3));
  }
  CHECK_THROWS_AS(inverse(j), std::domain_error);

  std::vector<RationalMatrix> pair{j, RationalMatrix(j * j)};
  const RationalMatrix common = joint_kernel(pair);
  CHECK(common.cols() == 1);
  CHECK(in_span(common, RationalVector::Unit(3, 0)));
  CHECK_FALSE(in_span(common, RationalVector::Unit(3, 1)));
}

TEST_CASE("matrix norm is the maximal entry norm") {
  RationalMatrix m(2, 2);
  m << Rational(4), Rational(1, 2), 0, 6;
  CHECK(matrix_norm(m, Prime(2)).exponent() == -1);
  CHECK(matrix_norm(RationalMatrix::Zero(2, 2), Prime(2)).is_zero());
}
