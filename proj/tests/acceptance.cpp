// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit when any
// criterion fails. Expected values come from the reference computations in
// oracles.cpp, never from the routine under test.

#include "oracles.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace padic;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

const std::vector<std::uint64_t> kPrimes{2, 3, 5};

LogConnection jordan_module(int order) {
  RationalMatrix n = RationalMatrix::Zero(2, 2);
  n(0, 1) = 1;
  return build_unipotent(MonodromyData{2, {n}}, SeriesWindow::power_series(1, order));
}

Outcome exp_radius() {
  Outcome out;
  const auto w = SeriesWindow::power_series(1, 64);
  SeriesMatrix n(1, 1, w);
  n(0, 0).add_term({1}, 1);
  const OneVariableGauge g = canonical_gauge_1var(LogConnection(1, w, {n}), Prime(2));
  for (int i = 0; i <= 64; ++i)
    out.require(g.gauge_coefficients[static_cast<std::size_t>(i)](0, 0) == oracle::exp_minus_coefficient(i),
                "M_" + std::to_string(i) + " differs from (-1)^i/i!");

  // Tail average of -v_2(M_i)/i over [48, 64], valuations by division.
  Rational sum = 0;
  for (int i = 48; i <= 64; ++i) sum += Rational(-*oracle::valuation(oracle::exp_minus_coefficient(i), 2), i);
  const double avg = static_cast<double>(sum / 17);
  out.require(avg >= 0.9 && avg <= 1.1, "tail average " + std::to_string(avg) + " outside [0.9, 1.1]");
  const double est = static_cast<double>(radius_exponent_estimate(g, Prime(2)));
  out.require(est >= 0.9 && est <= 1.1, "library estimate " + std::to_string(est) + " outside [0.9, 1.1]");
  out.detail = out.ok ? "tail average " + std::to_string(avg) : out.detail;
  return out;
}

struct GaugeCase {
  OneVariableGauge gauge;
  std::uint64_t p;
};

std::vector<GaugeCase>& gauge_corpus() {
  static std::vector<GaugeCase> cases = [] {
    oracle::Random rng(2024);
    std::vector<GaugeCase> out;
    for (int t = 0; t < 50; ++t) {
      const std::uint64_t p = rng.pick(kPrimes);
      const LogConnection c = oracle::random_unipotent_connection(rng, rng.uniform(1, 3), 32, rng.uniform(1, 4), p);
      out.push_back({canonical_gauge_1var(c, Prime(p)), p});
    }
    return out;
  }();
  return cases;
}

Outcome gauge_bound() {
  Outcome out;
  for (const auto& [g, p] : gauge_corpus()) {
    // Exponent form: v(M_i) >= -2e v_p(i!) - i a + 2e i delta.
    const int e = g.nilpotency_index;
    for (std::size_t i = 0; i < g.gauge_coefficients.size(); ++i) {
      const RationalMatrix& m = g.gauge_coefficients[i];
      std::optional<long> v;
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index s = 0; s < m.cols(); ++s)
          if (auto x = oracle::valuation(m(r, s), p); x && (!v || *x < *v)) v = x;
      if (!v) continue;
      long fact = 0;
      for (std::size_t k = 2; k <= i; ++k) fact += *oracle::valuation(Rational(static_cast<long>(k)), p);
      const Rational li = static_cast<long>(i);
      const Rational bound = Rational(-2 * e * fact) - li * g.outer_radius_exp + 2 * e * li * g.delta.exponent();
      out.require(*v >= bound, "M_" + std::to_string(i) + " violates the bound");
    }
    out.require(gauge_coefficient_bound_holds(g, Prime(p)), "library bound check disagrees");
  }
  if (out.ok) out.detail = std::to_string(gauge_corpus().size()) + " connections";
  return out;
}

Outcome gauge_residual() {
  Outcome out;
  for (const auto& [g, p] : gauge_corpus()) {
    const auto& n = g.connection_coefficients;
    const auto& m = g.gauge_coefficients;
    for (std::size_t i = 0; i < m.size(); ++i) {
      // Coefficient of t^i in N M + t dM/dt - M N_0.
      RationalMatrix r = Rational(static_cast<long>(i)) * m[i] - m[i] * n[0];
      for (std::size_t j = 0; j <= i; ++j)
        if (i - j < n.size()) r += n[i - j] * m[j];
      out.require(is_zero(r), "residual nonzero at t^" + std::to_string(i));
    }
    out.require(gauge_residual_vanishes(g), "library residual check disagrees");
  }
  if (out.ok) out.detail = std::to_string(gauge_corpus().size()) + " connections";
  return out;
}

Outcome dl_equivalence() {
  Outcome out;
  oracle::Random rng(77);
  for (int t = 0; t < 30; ++t) {
    const int n = rng.uniform(1, 2), rank = rng.uniform(1, 3);
    const MonodromyData data = oracle::random_monodromy(rng, rank, n, rng.pick(kPrimes));
    const LogConnection c = build_unipotent(data, SeriesWindow::power_series(n, 5));
    const auto word = dl_prefactor(data);
    const int l = rng.uniform(1, 5);
    const SeriesMatrix v = rng.section(rank, c.window, 3, 4);
    out.require(dl_operator(c, word, l, data.filtration_length(), v) == dl_closed_form(data, word, l, v),
                "case " + std::to_string(t) + " differs");
  }
  if (out.ok) out.detail = "30 cases";
  return out;
}

bool killed(const LogConnection& c, const SeriesMatrix& v) {
  for (int i = 0; i < c.num_vars; ++i)
    if (!log_action(c, i, v).is_zero()) return false;
  return true;
}

Outcome horizontal_extraction() {
  Outcome out;
  const LogConnection c = jordan_module(12);
  const RationalMatrix n = c.matrices[0].constant_part();
  const SeriesMatrix kernel_basis = horizontal_space(c, Prime(3));
  const RationalMatrix ker = kernel(n);
  out.require(kernel_basis.cols() == ker.cols(), "horizontal space has the wrong dimension");

  const HorizontalSection a = horizontal_limit(c, HorizontalStrategy::dl_operators, Prime(3), 64);
  const SeriesMatrix v0 = basis_section(2, a.generator, c.window);
  out.require(a.section == n * v0, "strategy A does not return N v0");
  for (auto strategy : {HorizontalStrategy::dl_operators, HorizontalStrategy::q_polynomials}) {
    const HorizontalSection h = horizontal_limit(c, strategy, Prime(3), 64);
    out.require(!h.section.is_zero() && killed(c, h.section), "section not killed by the derivation");
    out.require(h.horizontal, "horizontal flag not set");
    out.require(h.stabilized_at <= 64, "no stabilization within budget");
    out.require(in_span(ker, h.section.constant_part().col(0)), "section outside the kernel of N");
  }
  if (out.ok) out.detail = "generator " + std::to_string(a.generator) + ", stabilized at " + std::to_string(a.stabilized_at);
  return out;
}

Outcome q_machinery() {
  Outcome out;
  for (int d = 1; d <= 3; ++d)
    for (int j = 0; j <= 6; ++j) {
      const auto s = q_difference_support(j, d);
      out.require(s.lowest >= j + 1, "support starts below j+1");
      // Coefficients are integers by type; confirm they reproduce the values.
      for (long x = 0; x <= 2 * d * (j + 2); ++x) {
        Rational sum = 0;
        for (std::size_t k = 0; k < s.coefficients.size(); ++k)
          sum += Rational(s.coefficients[k]) * oracle::binomial(x, static_cast<int>(k));
        out.require(sum == oracle::q_value(j + 1, d, x) - oracle::q_value(j, d, x), "binomial expansion mismatch");
      }
    }
  oracle::Random rng(91);
  for (int t = 0; t < 10; ++t) {
    const std::uint64_t p = rng.pick(kPrimes);
    const int rank = rng.uniform(1, 3);
    const LogConnection c = oracle::random_unipotent_connection(rng, rank, 10, rng.uniform(1, 3), p);
    for (int j = 0; j <= 6; ++j)
      for (int l = 0; l < rank; ++l) {
        const auto r = q_divisibility_check(c, basis_section(rank, l, c.window), j, 0, Prime(p));
        out.require(r.difference_divisible && r.limit_divisible, "divisibility fails at j=" + std::to_string(j));
      }
  }
  if (out.ok) out.detail = "d <= 3, j <= 6, 10 fixtures";
  return out;
}

std::optional<Rational> tate_exp(const TateElement& y, const Rational& lambda_exp, std::uint64_t p) {
  std::optional<Rational> best;
  for (const auto& [j, c] : y.terms()) {
    const Rational v = *oracle::valuation(c, p) + lambda_exp * j.back();
    if (!best || v < *best) best = v;
  }
  return best;
}

bool tate_le(const TateElement& a, const TateElement& b, const Rational& lambda_exp, std::uint64_t p) {
  const auto x = tate_exp(a, lambda_exp, p), y = tate_exp(b, lambda_exp, p);
  return !x || (y && *x >= *y);
}

TateElement random_poly(oracle::Random& rng, int n, std::uint64_t p, int terms, int degree) {
  TateElement y(n);
  for (int k = 0; k < terms; ++k) {
    Exponents j;
    for (int i = 0; i < n; ++i) j.push_back(rng.uniform(0, degree));
    y.add_term(j, rng.rational(p, false));
  }
  return y;
}

// Divides and checks both norm inequalities and the per-step invariant.
std::size_t division_steps = 0;

void check_division(Outcome& out, const TateElement& z, const TateElement& y, const std::vector<TateElement>& basis,
                    const Rational& rho, const Rational& delta_exp, std::uint64_t p, const std::string& label) {
  const Reduction r = norm_controlled_reduce(z, y, basis, rho, delta_exp, Prime(p));
  division_steps += r.trace.size();
  out.require(reduction_certificate_holds(z, basis, r), label + ": z - u not the traced combination");
  out.require(tate_le(r.u, y, 0, p), label + ": |u|_1 > |y|_1");
  out.require(tate_le(r.u, z, rho, p), label + ": |u|_rho > |z|_rho");
  TateElement cur = z;
  for (const auto& step : r.trace) {
    cur -= step.multiplier * basis[static_cast<std::size_t>(step.basis_index)];
    out.require(tate_le(cur, z, rho, p), label + ": |z_j|_rho > |z|_rho");
    const auto at = tate_exp(cur, rho, p);
    out.require(!at || step.norm_at_rho.exponent() == *at, label + ": traced norm differs");
  }
}

Outcome tate_division() {
  Outcome out;
  int cases = 0;
  // Fixed corpus: the ideal (x_n - p) with the last variable substituted.
  for (std::uint64_t p : kPrimes)
    for (int n = 1; n <= 3; ++n) {
      Exponents lead(static_cast<std::size_t>(n), 0);
      lead.back() = 1;
      const TateElement d = TateElement::monomial(n, lead, 1) - TateElement::constant(n, static_cast<long>(p));
      for (int k = 1; k <= 4; ++k) {
        Exponents j(static_cast<std::size_t>(n), 1);
        j.back() = k;
        const TateElement z = TateElement::monomial(n, j, 1);
        j.back() = 0;
        const TateElement y = TateElement::monomial(n, j, oracle::power(static_cast<long>(p), k));
        check_division(out, z, y, {d}, Rational(-1, 2), -1, p, "corpus p=" + std::to_string(p));
        ++cases;
      }
    }

  oracle::Random rng(101);
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t p = rng.pick(kPrimes);
    const int n = rng.uniform(1, 3);
    const Rational delta_exp = -rng.uniform(1, 3);
    std::vector<TateElement> gens;
    // Generator with a pure x_n power as leading term, optionally a second
    // one whose leading term is a power of x_1 alone.
    Exponents lead(static_cast<std::size_t>(n), 0);
    lead.back() = rng.uniform(1, 3);
    TateElement d = TateElement::monomial(n, lead, 1);
    d += random_poly(rng, n, p, 2, 0) * TateElement::constant(n, static_cast<long>(p));
    Exponents below(static_cast<std::size_t>(n), 0);
    if (n > 1) below[0] = rng.uniform(0, 2);
    d.add_term(below, Rational(static_cast<long>(p)));
    gens.push_back(d);
    if (n > 1 && rng.uniform(0, 3) == 0) {
      Exponents l1(static_cast<std::size_t>(n), 0);
      l1[0] = rng.uniform(1, 3);
      gens.push_back(TateElement::monomial(n, l1, 1) - TateElement::constant(n, rng.rational(p)));
    }
    const CompletionResult cr = complete_basis(gens, Prime(p), 8);
    out.require(cr.complete, "completion failed: " + cr.diagnostic);
    if (!cr.complete) continue;

    Rational tightest = delta_exp;
    for (const auto& b : cr.basis) tightest = std::max(tightest, stability_threshold(b, delta_exp, Prime(p)).rho_exp);
    const Rational rho = tightest / 2;

    // A small representative y and a large z in the same coset.
    const TateElement y = random_poly(rng, n, p, 3, 4) * TateElement::constant(n, static_cast<long>(p * p));
    TateElement z = y;
    for (const auto& b : cr.basis) z += random_poly(rng, n, p, 2, 2) * b;
    check_division(out, z, y, cr.basis, rho, delta_exp, p, "random case " + std::to_string(t));
    ++cases;
  }
  if (out.ok) out.detail = std::to_string(cases) + " divisions, " + std::to_string(division_steps) + " steps";
  return out;
}

Outcome gauss_norm_properties() {
  Outcome out;
  oracle::Random rng(131);
  const std::vector<Rational> cs{Rational(1, 4), Rational(1, 2), Rational(3, 4)};
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t p = rng.pick(kPrimes);
    const int n = rng.uniform(1, 3);
    const TruncatedSeries x = rng.series(SeriesWindow::laurent(n, 10, 10), p, rng.uniform(1, 8));
    std::vector<Rational> a, b;
    for (int i = 0; i < n; ++i) {
      Rational u(rng.uniform(0, 12), rng.uniform(1, 4)), v(rng.uniform(0, 12), rng.uniform(1, 4));
      if (u < v) std::swap(u, v);
      a.push_back(u);  // inner: smaller radius, larger exponent
      b.push_back(v);
    }
    const Rational c = rng.pick(cs);
    std::vector<Rational> mid;
    for (int i = 0; i < n; ++i) mid.push_back(c * a[static_cast<std::size_t>(i)] + (1 - c) * b[static_cast<std::size_t>(i)]);

    const auto ga = oracle::gauss_exponent(x, a, p), gb = oracle::gauss_exponent(x, b, p),
               gm = oracle::gauss_exponent(x, mid, p);
    const NormExp lib_mid = gauss_norm(x, RadiusTuple(mid), Prime(p));
    out.require(!gm == lib_mid.is_zero() && (!gm || lib_mid.exponent() == *gm), "gauss_norm differs from reference");
    if (gm) out.require(*gm >= c * *ga + (1 - c) * *gb, "Hadamard inequality fails");

    // Corner maximum against every corner and interior grid points.
    const CornerMaximum cm = corner_maximum(x, RadiusTuple(a), RadiusTuple(b), Prime(p));
    std::optional<Rational> best;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Rational> e;
      for (int i = 0; i < n; ++i) e.push_back(mask & (1u << i) ? b[static_cast<std::size_t>(i)] : a[static_cast<std::size_t>(i)]);
      const auto g = oracle::gauss_exponent(x, e, p);
      if (g && (!best || *g < *best)) best = g;
    }
    out.require(best && cm.value.exponent() == *best, "corner maximum differs from the best corner");
    out.require(best && oracle::gauss_exponent(x, cm.corner.exponents, p) == best, "reported corner does not attain it");
    for (int s = 0; s < 5 && best; ++s) {
      std::vector<Rational> e;
      for (int i = 0; i < n; ++i) {
        const Rational f(rng.uniform(0, 8), 8);
        e.push_back(f * a[static_cast<std::size_t>(i)] + (1 - f) * b[static_cast<std::size_t>(i)]);
      }
      out.require(*oracle::gauss_exponent(x, e, p) >= *best, "interior radius beats the corners");
    }
  }
  if (out.ok) out.detail = "200 series";
  return out;
}

Outcome taylor_cocycle() {
  Outcome out;
  oracle::Random rng(151);
  for (int t = 0; t < 6; ++t) {
    const std::uint64_t p = rng.pick(kPrimes);
    const LogConnection c = oracle::random_unipotent_connection(rng, 2, 10, rng.uniform(1, 3), p);
    const CocycleCheck cc = transport_cocycle_check(taylor_transport(c, 8, Prime(p)));
    out.require(cc.holds && cc.compared_terms > 0, "cocycle fails on fixture " + std::to_string(t));
  }
  out.require(transport_cocycle_check(taylor_transport(jordan_module(10), 8, Prime(3))).holds, "cocycle fails on Jordan");
  for (int n = 1; n <= 2; ++n)
    for (int order : {1, 4, 8, 12}) {
      const auto w = SeriesWindow::power_series(n, 6);
      const LogConnection triv(2, w, std::vector<SeriesMatrix>(static_cast<std::size_t>(n), SeriesMatrix(2, 2, w)));
      const TaylorTransport tt = taylor_transport(triv, order, Prime(5));
      for (const auto& [i, e] : tt.coefficients) {
        const bool origin = std::all_of(i.begin(), i.end(), [](int x) { return x == 0; });
        out.require(origin ? e == SeriesMatrix::identity(2, w) : e.is_zero(), "trivial transport is not the identity");
      }
    }
  if (out.ok) out.detail = "order 8, 7 fixtures";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Outcome()> run;
    long limit_ms;  // 0: no runtime requirement
  };
  const std::vector<Criterion> criteria{
      {"exp(-t) gauge coefficients and radius", exp_radius, 1000},
      {"gauge coefficient bound", gauge_bound, 10000},
      {"gauge residual", gauge_residual, 0},
      {"D_l operator equivalence", dl_equivalence, 10000},
      {"horizontal extraction", horizontal_extraction, 0},
      {"Q polynomial machinery", q_machinery, 0},
      {"Tate division contract", tate_division, 0},
      {"Gauss norm properties", gauss_norm_properties, 0},
      {"Taylor transport cocycle", taylor_cocycle, 0},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && criteria[k].limit_ms > 0 && ms >= criteria[k].limit_ms)
      o = {false, "took longer than " + std::to_string(criteria[k].limit_ms) + " ms"};
    if (!o.ok) ++failures;
    std::cout << (o.ok ? "PASS" : "FAIL") << " [" << k + 1 << "] " << criteria[k].name << " (" << ms << " ms)"
              << (o.detail.empty() ? "" : ": " + o.detail) << '\n';
  }
  return failures == 0 ? 0 : 1;
}
