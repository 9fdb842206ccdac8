#include "padic/connection.hpp"

#include <algorithm>

namespace padic {

namespace {

// Solves N_0 M_i + i M_i - M_i N_0 = -sum_{j<i} N_{i-j} M_j for M_1..M_order.
// The operator i + ad(N_0) is inverted by its finite Neumann series, since
// ad(N_0)^(2e-1) = 0. Coeff is a constant matrix or a matrix of series in
// the variables already handled.
template <typename Coeff>
std::vector<Coeff> solve_gauge_recursion(const std::vector<Coeff>& n, const RationalMatrix& n0, int e, int order,
                                         const Coeff& identity) {
  std::vector<Coeff> m{identity};
  const Coeff zero = identity * Rational(0);
  for (int i = 1; i <= order; ++i) {
    Coeff w = zero;
    for (int j = 0; j < i; ++j) {
      const auto k = static_cast<std::size_t>(i - j);
      if (k < n.size()) w -= n[k] * m[static_cast<std::size_t>(j)];
    }
    Rational scale(1, i);
    Coeff term = w;
    Coeff acc = w * scale;
    for (int k = 1; k < 2 * e; ++k) {
      term = n0 * term - term * n0;
      scale *= Rational(-1, i);
      acc += term * scale;
    }
    m.push_back(std::move(acc));
  }
  return m;
}

Exponents unit_exponent(int num_vars, int k, int power) {
  Exponents j(static_cast<std::size_t>(num_vars), 0);
  j[static_cast<std::size_t>(k)] = power;
  return j;
}

NormExp frozen_delta(const SeriesMatrix& n, const Rational& a_exp, const Prime& p) {
  return max(NormExp::one(), gauss_norm(n, RadiusTuple::uniform(n.window().num_vars(), a_exp), p));
}

void require_log_power_series(const LogConnection& c, const char* who) {
  if (c.form != LogConnection::Form::logarithmic)
    throw std::invalid_argument(std::string(who) + ": needs logarithmic form");
  if (!c.window.is_power_series()) throw std::invalid_argument(std::string(who) + ": needs a power-series window");
}

}  // namespace

Rational convergence_radius_bound(const Rational& a_exp, const NormExp& delta, int e, const Prime& p) {
  if (delta.is_zero() || delta.exponent() > 0) throw std::invalid_argument("convergence_radius_bound: delta < 1");
  return Rational(2 * e, static_cast<long>(p.value()) - 1) + a_exp - 2 * e * delta.exponent();
}

OneVariableGauge canonical_gauge_1var(const LogConnection& c, const Prime& p, int variable) {
  require_log_power_series(c, "canonical_gauge_1var");
  if (variable < 0 || variable >= c.num_vars) throw std::out_of_range("canonical_gauge_1var: bad variable");
  const auto k = static_cast<std::size_t>(variable);
  const int order = c.window.upper[k];

  SeriesWindow frozen = c.window;
  for (std::size_t j = 0; j < frozen.upper.size(); ++j)
    if (j != k) frozen.upper[j] = 0;
  const SeriesMatrix n = c.matrices[k].restricted(frozen);

  OneVariableGauge g;
  g.variable = variable;
  g.outer_radius_exp = c.outer_radius_exp;
  for (int i = 0; i <= order; ++i) g.connection_coefficients.push_back(n.coefficient(unit_exponent(c.num_vars, variable, i)));
  g.residue = g.connection_coefficients.front();
  g.nilpotency_index = nilpotency_index(g.residue);
  if (g.nilpotency_index == 0) throw NotUnipotent(variable, g.residue);
  g.delta = frozen_delta(n, c.outer_radius_exp, p);

  g.gauge_coefficients = solve_gauge_recursion<RationalMatrix>(
      g.connection_coefficients, g.residue, g.nilpotency_index, order, RationalMatrix::Identity(c.rank, c.rank));

  g.gauge.matrix = SeriesMatrix(c.rank, c.rank, c.window);
  for (int i = 0; i <= order; ++i) {
    const auto& mi = g.gauge_coefficients[static_cast<std::size_t>(i)];
    const Exponents j = unit_exponent(c.num_vars, variable, i);
    for (int r = 0; r < c.rank; ++r)
      for (int s = 0; s < c.rank; ++s)
        if (mi(r, s) != 0) g.gauge.matrix(r, s).add_term(j, mi(r, s));
  }
  g.gauge.certified_radius_exponent = convergence_radius_bound(c.outer_radius_exp, g.delta, g.nilpotency_index, p);
  return g;
}

bool gauge_residual_vanishes(const OneVariableGauge& g) {
  const auto& n = g.connection_coefficients;
  const auto& m = g.gauge_coefficients;
  for (std::size_t i = 0; i < m.size(); ++i) {
    RationalMatrix r = Rational(static_cast<long>(i)) * m[i] - m[i] * g.residue;
    for (std::size_t j = 0; j <= i; ++j)
      if (i - j < n.size()) r += n[i - j] * m[j];
    if (!is_zero(r)) return false;
  }
  return true;
}

bool gauge_coefficient_bound_holds(const OneVariableGauge& g, const Prime& p) {
  const int e = g.nilpotency_index;
  const Rational& delta_exp = g.delta.exponent();
  for (std::size_t i = 0; i < g.gauge_coefficients.size(); ++i) {
    NormExp norm = matrix_norm(g.gauge_coefficients[i], p);
    if (norm.is_zero()) continue;
    const Rational idx(static_cast<long>(i));
    Rational bound = -2 * e * Rational(static_cast<long>(factorial_valuation(i, p))) - idx * g.outer_radius_exp +
                     2 * e * idx * delta_exp;
    if (norm.exponent() < bound) return false;
  }
  return true;
}

Rational radius_exponent_estimate(const OneVariableGauge& g, const Prime& p) {
  const int top = static_cast<int>(g.gauge_coefficients.size()) - 1;
  if (top < 1) throw std::invalid_argument("radius_exponent_estimate: no coefficients beyond M_0");
  Rational sum = 0;
  int count = 0;
  for (int i = std::max(1, 3 * top / 4); i <= top; ++i) {
    NormExp norm = matrix_norm(g.gauge_coefficients[static_cast<std::size_t>(i)], p);
    if (norm.is_zero()) continue;
    sum += -norm.exponent() / i;
    ++count;
  }
  if (count == 0) throw std::invalid_argument("radius_exponent_estimate: tail coefficients all vanish");
  return sum / count;
}

IteratedGauge iterated_gauge(const LogConnection& c, const Prime& p) {
  require_log_power_series(c, "iterated_gauge");
  if (!validate_integrability(c, p).passes) throw std::invalid_argument("iterated_gauge: connection is not integrable");

  IteratedGauge out;
  LogConnection cur = c;
  SeriesMatrix total = SeriesMatrix::identity(c.rank, c.window);
  Rational certified = 0;

  for (int var = 0; var < c.num_vars; ++var) {
    const auto k = static_cast<std::size_t>(var);
    // Coefficients of t_k^i are series in t_0..t_{k-1}; later variables are
    // set to zero.
    SeriesWindow earlier = SeriesWindow::power_series(c.num_vars, 0);
    for (std::size_t j = 0; j < k; ++j) earlier.upper[j] = c.window.upper[j];
    SeriesWindow slice = earlier;
    slice.upper[k] = c.window.upper[k];

    const SeriesMatrix n = cur.matrices[k].restricted(slice);
    const int order = c.window.upper[k];
    std::vector<SeriesMatrix> coeffs(static_cast<std::size_t>(order) + 1, SeriesMatrix(c.rank, c.rank, earlier));
    for (int r = 0; r < c.rank; ++r)
      for (int s = 0; s < c.rank; ++s)
        for (const auto& [j, v] : n(r, s).terms()) {
          Exponents base = j;
          base[k] = 0;
          coeffs[static_cast<std::size_t>(j[k])](r, s).add_term(base, v);
        }

    OneVariableGauge step;
    step.variable = var;
    step.outer_radius_exp = c.outer_radius_exp;
    step.residue = coeffs.front().constant_part();
    if (!coeffs.front().is_constant())
      throw std::domain_error("iterated_gauge: residue along t_" + std::to_string(var) + " = 0 is not constant");
    step.nilpotency_index = nilpotency_index(step.residue);
    if (step.nilpotency_index == 0) throw NotUnipotent(var, step.residue);
    step.delta = frozen_delta(n, c.outer_radius_exp, p);

    const auto ms = solve_gauge_recursion<SeriesMatrix>(coeffs, step.residue, step.nilpotency_index, order,
                                                        SeriesMatrix::identity(c.rank, earlier));
    SeriesMatrix m(c.rank, c.rank, c.window);
    for (int i = 0; i <= order; ++i)
      for (int r = 0; r < c.rank; ++r)
        for (int s = 0; s < c.rank; ++s)
          for (const auto& [j, v] : ms[static_cast<std::size_t>(i)](r, s).terms()) {
            Exponents full = j;
            full[k] = i;
            m(r, s).add_term(full, v);
          }
    if (c.num_vars == 1) {
      for (const auto& x : coeffs) step.connection_coefficients.push_back(x.constant_part());
      for (const auto& x : ms) step.gauge_coefficients.push_back(x.constant_part());
    }

    step.gauge.matrix = m;
    step.gauge.certified_radius_exponent =
        convergence_radius_bound(c.outer_radius_exp, step.delta, step.nilpotency_index, p);
    certified = std::max(certified, step.gauge.certified_radius_exponent);

    cur = gauge_transform(cur, m);
    total = total * m;
    out.steps.push_back(std::move(step));
  }

  out.data.rank = c.rank;
  for (int var = 0; var < c.num_vars; ++var) {
    const auto& m = cur.matrices[static_cast<std::size_t>(var)];
    if (!m.is_constant()) throw std::domain_error("iterated_gauge: gauged connection is not constant");
    out.data.nilpotents.push_back(m.constant_part());
  }
  out.data.validate();
  out.gauge.matrix = std::move(total);
  out.gauge.certified_radius_exponent = certified;
  return out;
}

}  // namespace padic
