#include "doctest.h"
#include "oracles.hpp"

using namespace padic;

namespace {

TateElement poly(int n, std::initializer_list<std::pair<Exponents, Rational>> terms) {
  TateElement y(n);
  for (const auto& [j, c] : terms) y.add_term(j, c);
  return y;
}

// max_J |c_J| lambda^(j_n) from valuations, nullopt for zero.
std::optional<Rational> norm_exp(const TateElement& y, const Rational& lambda_exp, std::uint64_t p) {
  std::optional<Rational> best;
  for (const auto& [j, c] : y.terms()) {
    const Rational v = *oracle::valuation(c, p) + lambda_exp * j.back();
    if (!best || v < *best) best = v;
  }
  return best;
}

bool norm_le(const TateElement& a, const TateElement& b, const Rational& lambda_exp, std::uint64_t p) {
  const auto x = norm_exp(a, lambda_exp, p), y = norm_exp(b, lambda_exp, p);
  if (!x) return true;
  return y && *x >= *y;
}

// Substitutes x_n = s; z lies in (x_n - s) iff the result vanishes.
TateElement substitute_last(const TateElement& z, const Rational& s) {
  TateElement out(z.num_vars());
  for (const auto& [j, c] : z.terms()) {
    Exponents k = j;
    k.back() = 0;
    out.add_term(k, c * oracle::power(s, j.back()));
  }
  return out;
}

}  // namespace

TEST_CASE("tate element arithmetic and norm") {
  const auto a = poly(1, {{{0}, 4}, {{1}, 1}});
  CHECK((a * a) == poly(1, {{{0}, 16}, {{1}, 8}, {{2}, 1}}));
  CHECK((a - a).is_zero());
  CHECK(a.total_degree() == 1);
  CHECK_THROWS_AS(TateElement(1).add_term({-1}, 1), std::invalid_argument);
  CHECK(tate_norm(a, 0, Prime(2)).exponent() == 0);
  CHECK(tate_norm(a, -1, Prime(2)).exponent() == -1);
  CHECK(tate_norm(TateElement(1), 0, Prime(2)).is_zero());
}

TEST_CASE("monomial order puts the varied variable first") {
  CHECK(monomial_less({5, 0}, {0, 1}));
  CHECK(monomial_less({0, 1}, {1, 1}));
  CHECK_FALSE(monomial_less({1, 1}, {1, 1}));
  CHECK(divides({1, 0}, {2, 3}));
  CHECK_FALSE(divides({0, 4}, {2, 3}));
}

TEST_CASE("leading terms depend on the radius") {
  const auto y = poly(1, {{{2}, 2}, {{1}, 1}});
  CHECK(leading_term(y, 0, -2, Prime(2)).exponent == Exponents{1});
  CHECK(leading_term(y, Rational(-3, 2), -2, Prime(2)).exponent == Exponents{2});
  // At the crossing both have the same norm and the larger monomial wins.
  CHECK(leading_term(y, -1, -2, Prime(2)).exponent == Exponents{2});
  CHECK_THROWS_AS(leading_term(y, -3, -2, Prime(2)), std::invalid_argument);
  CHECK_THROWS_AS(leading_term(TateElement(1), 0, -2, Prime(2)), std::invalid_argument);
}

TEST_CASE("stability threshold") {
  const auto t = stability_threshold(poly(1, {{{2}, 2}, {{1}, 1}}), -2, Prime(2));
  CHECK(t.leading == Exponents{1});
  CHECK(t.crossover);
  CHECK(t.rho_exp == -1);
  const auto none = stability_threshold(poly(1, {{{1}, 1}, {{0}, -2}}), -2, Prime(2));
  CHECK_FALSE(none.crossover);
  CHECK(none.rho_exp == -2);
}

TEST_CASE("reduction of the division fixture") {
  const auto z = poly(1, {{{3}, 1}});
  const auto y = poly(1, {{{0}, 8}});
  const std::vector<TateElement> basis{poly(1, {{{1}, 1}, {{0}, -2}})};
  const Reduction r = norm_controlled_reduce(z, y, basis, -1, -2, Prime(2));
  CHECK(r.u == y);
  CHECK(reduction_certificate_holds(z, basis, r));
  CHECK(r.rho_invariant_held);
  CHECK(r.trace.size() == 3);
  CHECK_THROWS_AS(norm_controlled_reduce(z, y, basis, -3, -2, Prime(2)), std::invalid_argument);
  CHECK_THROWS_AS(norm_controlled_reduce(z, y, basis, -1, -2, Prime(2), 1), std::runtime_error);
  CHECK_THROWS_AS(norm_controlled_reduce(z, y, {poly(1, {{{4}, 1}})}, -1, -2, Prime(2)), std::domain_error);
}

TEST_CASE("reduction on the principal corpus x_n - p a") {
  oracle::Random rng(61);
  for (int t = 0; t < 60; ++t) {
    const std::uint64_t p = rng.pick(std::vector<std::uint64_t>{2, 3, 5});
    const int n = rng.uniform(1, 2);
    const Rational delta_exp = -rng.uniform(1, 3);
    Rational a = rng.uniform(1, static_cast<int>(p) - 1);
    if (rng.coin()) a = -a;
    const Rational s = a * static_cast<long>(p);
    Exponents lead(static_cast<std::size_t>(n), 0);
    lead.back() = 1;
    const TateElement d = TateElement::monomial(n, lead, 1) - TateElement::constant(n, s);
    const auto thr = stability_threshold(d, delta_exp, Prime(p));
    // |x_n| only grows past radius 1, so the leading term never changes.
    CHECK_FALSE(thr.crossover);
    CHECK(thr.rho_exp == delta_exp);

    // z = y0 + q d with y0 free of x_n and small.
    TateElement y0(n), q(n);
    for (int k = 0; k < 3; ++k) {
      Exponents j, i;
      for (int v = 0; v < n; ++v) {
        j.push_back(v + 1 < n ? rng.uniform(0, 4) : 0);
        i.push_back(rng.uniform(0, 4));
      }
      y0.add_term(j, rng.rational(p, false) * static_cast<long>(p * p));
      q.add_term(i, rng.rational(p, false));
    }
    const TateElement z = y0 + q * d;
    const TateElement y = substitute_last(z, s);
    CHECK(y == y0);
    const Rational rho = thr.rho_exp / 2;
    const Reduction r = norm_controlled_reduce(z, y, {d}, rho, delta_exp, Prime(p));
    CHECK(reduction_certificate_holds(z, {d}, r));
    CHECK(substitute_last(z - r.u, s).is_zero());
    CHECK(norm_le(r.u, y, 0, p));
    CHECK(norm_le(r.u, z, rho, p));
    CHECK(r.rho_invariant_held);
    if (!norm_le(z, y, 0, p)) CHECK_FALSE(r.trace.empty());
  }
}

TEST_CASE("basis completion") {
  const auto d = poly(2, {{{0, 1}, 1}, {{0, 0}, -3}});
  const auto single = complete_basis({d}, Prime(3));
  CHECK(single.complete);
  CHECK(single.basis.size() == 1);

  const auto coprime = complete_basis({poly(2, {{{1, 0}, 1}, {{0, 0}, -1}}), d}, Prime(3));
  CHECK(coprime.complete);
  CHECK(coprime.basis.size() == 2);

  const std::vector<TateElement> gens{poly(2, {{{2, 1}, 1}, {{0, 0}, -1}}), poly(2, {{{1, 2}, 1}, {{0, 0}, -1}})};
  const auto grown = complete_basis(gens, Prime(3));
  CHECK(grown.complete);
  CHECK(grown.basis.size() >= 3);
  CHECK(std::find(grown.basis.begin(), grown.basis.end(), gens[0]) != grown.basis.end());
  // The standard basis reduces each generator to zero.
  for (const auto& g : gens) {
    const Reduction r = norm_controlled_reduce(g, TateElement(2), grown.basis, 0, -1, Prime(3));
    CHECK(r.u.is_zero());
  }

  const auto capped = complete_basis(gens, Prime(3), 0);
  CHECK_FALSE(capped.complete);
  CHECK_FALSE(capped.diagnostic.empty());
}

TEST_CASE("Hadamard check on the polydisc") {
  const auto g = poly(1, {{{0}, 4}, {{1}, 1}});
  const auto h = polydisc_hadamard_check(g, Rational(1, 2), -1, Prime(2));
  CHECK(h.lambda_exp == Rational(-1, 2));
  CHECK(h.at_one.exponent() == 0);
  CHECK(h.at_delta.exponent() == -1);
  CHECK(h.at_lambda.exponent() == Rational(-1, 2));
  CHECK(h.holds);

  oracle::Random rng(67);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t p = rng.pick(std::vector<std::uint64_t>{2, 3, 5});
    const int n = rng.uniform(1, 3);
    TateElement y(n);
    for (int k = 0; k < 5; ++k) {
      Exponents j;
      for (int i = 0; i < n; ++i) j.push_back(rng.uniform(0, 6));
      y.add_term(j, rng.rational(p, false));
    }
    if (y.is_zero()) continue;
    const Rational c(rng.uniform(0, 6), 6);
    const Rational delta_exp = -Rational(rng.uniform(1, 8), rng.uniform(1, 3));
    const auto r = polydisc_hadamard_check(y, c, delta_exp, Prime(p));
    CHECK(r.holds);
    CHECK(r.lambda_exp == (1 - c) * delta_exp);
    const auto lam = norm_exp(y, r.lambda_exp, p);
    CHECK(r.at_lambda.exponent() == *lam);
    CHECK(*lam >= c * *norm_exp(y, 0, p) + (1 - c) * *norm_exp(y, delta_exp, p));
  }
}
