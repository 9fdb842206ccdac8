// Reference computations and random instance generators shared by the unit
// tests and the acceptance runner. Nothing here calls the library routine it
// is meant to check.
#pragma once

#include "padic/connection.hpp"
#include "padic/tate.hpp"
#include "padic/unipotence.hpp"

#include <random>

namespace oracle {

using padic::Exponents;
using padic::Rational;
using padic::RationalMatrix;

/// v_p by repeated division; nullopt for zero.
std::optional<long> valuation(const Rational& x, std::uint64_t p);

/// min_J v_p(c_J) + sum j_i e_i, nullopt for the zero series.
std::optional<Rational> gauss_exponent(const padic::TruncatedSeries& x, const std::vector<Rational>& e,
                                       std::uint64_t p);

/// (-1)^i / i!.
Rational exp_minus_coefficient(int i);

/// Q_j(x) evaluated straight from the product formula.
Rational q_value(int j, int d, long x);

/// x^k for k >= 0.
Rational power(const Rational& x, int k);

/// binom(x, k) for integer x.
Rational binomial(long x, int k);

/// Matrix coefficient of t^i in a one-variable series matrix.
RationalMatrix coefficient(const padic::SeriesMatrix& m, int i);

class Random {
public:
  explicit Random(std::uint64_t seed) : gen_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }
  bool coin() { return uniform(0, 1) == 1; }
  template <typename T>
  const T& pick(const std::vector<T>& v) { return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))]; }

  /// Small rational whose numerator and denominator may carry powers of p.
  Rational rational(std::uint64_t p, bool allow_zero = true);
  RationalMatrix matrix(int r, std::uint64_t p, int zero_bias = 1);
  /// Nilpotent matrix: strictly upper triangular, conjugated by a random
  /// unimodular integer matrix.
  RationalMatrix nilpotent(int r, std::uint64_t p);
  /// Random polynomial with terms inside the window.
  padic::TruncatedSeries series(const padic::SeriesWindow& w, std::uint64_t p, int terms);
  padic::SeriesMatrix section(int rank, const padic::SeriesWindow& w, std::uint64_t p, int terms);

private:
  std::mt19937_64 gen_;
};

/// Rank-r, one-variable connection N_0 + N_1 t + ... + N_deg t^deg with N_0
/// nilpotent.
padic::LogConnection random_unipotent_connection(Random& rng, int rank, int order, int degree, std::uint64_t p);

/// Commuting nilpotent data for n variables: polynomials in one nilpotent.
padic::MonodromyData random_monodromy(Random& rng, int rank, int num_vars, std::uint64_t p);

/// Constant data moved by a random polynomial gauge G with G(0) = I.
padic::LogConnection gauged_unipotent(Random& rng, const padic::MonodromyData& data, const padic::SeriesWindow& w,
                                      std::uint64_t p);

}  // namespace oracle
