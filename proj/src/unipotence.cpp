#include "padic/unipotence.hpp"

#include <algorithm>

namespace padic {

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.empty() || b.empty()) return {};
  Polynomial out(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Polynomial poly_sub(const Polynomial& a, const Polynomial& b) {
  Polynomial out(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Rational poly_eval(const Polynomial& a, const Rational& x) {
  Rational acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<Integer> binomial_decompose(const Polynomial& p) {
  // a_k is the k-th forward difference at 0.
  const std::size_t n = p.size();
  std::vector<Rational> values;
  for (std::size_t x = 0; x < n; ++x) values.push_back(poly_eval(p, Rational(static_cast<long>(x))));
  std::vector<Integer> out;
  for (std::size_t k = 0; k < n; ++k) {
    const Rational& a = values.front();
    if (denominator(a) != 1) throw std::invalid_argument("binomial_decompose: polynomial is not integer-valued");
    out.push_back(numerator(a));
    for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
    values.pop_back();
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

Polynomial q_poly(int j, int d) {
  if (j < 0 || d < 1) throw std::invalid_argument("q_poly: need j >= 0 and d >= 1");
  Polynomial base{Rational(1)};
  for (int k = 1; k <= j; ++k) base = poly_mul(base, {Rational(1), Rational(-1, k)});
  Polynomial out{Rational(1)};
  for (int i = 0; i < d; ++i) out = poly_mul(out, base);
  Polynomial x_power(static_cast<std::size_t>(d), Rational(0));
  x_power.back() = 1;
  return poly_mul(x_power, out);
}

QDifferenceSupport q_difference_support(int j, int d) {
  QDifferenceSupport s;
  s.coefficients = binomial_decompose(poly_sub(q_poly(j + 1, d), q_poly(j, d)));
  if (s.coefficients.empty()) throw std::invalid_argument("q_difference_support: difference vanishes");
  s.highest = static_cast<int>(s.coefficients.size()) - 1;
  s.lowest = 0;
  while (s.coefficients[static_cast<std::size_t>(s.lowest)] == 0) ++s.lowest;
  return s;
}

SeriesMatrix apply_polynomial(const LogConnection& c, int i, const Polynomial& poly, const SeriesMatrix& v) {
  if (poly.empty()) return v * Rational(0);
  SeriesMatrix acc = v * poly.back();
  for (std::size_t k = poly.size() - 1; k-- > 0;) acc = log_action(c, i, acc) + v * poly[k];
  return acc;
}

namespace {

bool vanishes_below(const SeriesMatrix& m, int variable, int j) {
  const auto k = static_cast<std::size_t>(variable);
  for (int r = 0; r < m.rows(); ++r)
    for (int s = 0; s < m.cols(); ++s)
      for (const auto& [e, v] : m(r, s).terms())
        if (e[k] <= j) return false;
  return true;
}

SeriesMatrix slice_at_zero(const SeriesMatrix& m, int variable) {
  SeriesMatrix out(m.rows(), m.cols(), m.window());
  const auto k = static_cast<std::size_t>(variable);
  for (int r = 0; r < m.rows(); ++r)
    for (int s = 0; s < m.cols(); ++s)
      for (const auto& [e, v] : m(r, s).terms())
        if (e[k] == 0) out(r, s).add_term(e, v);
  return out;
}

RationalMatrix matrix_power(const RationalMatrix& a, int k) {
  RationalMatrix out = RationalMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

int window_extent(const SeriesWindow& w) {
  int extent = 0;
  for (std::size_t i = 0; i < w.lower.size(); ++i) extent = std::max({extent, -w.lower[i], w.upper[i]});
  return extent;
}

bool is_horizontal(const LogConnection& c, const SeriesMatrix& v) {
  for (int i = 0; i < c.num_vars; ++i)
    if (!log_action(c, i, v).is_zero()) return false;
  return true;
}

}  // namespace

QDivisibility q_divisibility_check(const LogConnection& c, const SeriesMatrix& v, int j, int variable,
                                   const Prime& p) {
  if (variable < 0 || variable >= c.num_vars) throw std::out_of_range("q_divisibility_check: bad variable");
  if (c.window.upper[static_cast<std::size_t>(variable)] < j)
    throw std::invalid_argument("q_divisibility_check: window too short for t^(j+1)");
  const IteratedGauge g = iterated_gauge(c, p);
  const RationalMatrix& n = g.data.nilpotents[static_cast<std::size_t>(variable)];
  const int d = nilpotency_index(n);

  QDivisibility out;
  const SeriesMatrix diff = apply_polynomial(c, variable, poly_sub(q_poly(j + 1, d), q_poly(j, d)), v);
  out.difference_divisible = vanishes_below(diff, variable, j);

  const SeriesMatrix& m = g.gauge.matrix;
  const SeriesMatrix y = inverse(m) * v.restricted(c.window);
  const SeriesMatrix limit = m * (matrix_power(n, d - 1) * slice_at_zero(y, variable));
  out.limit_divisible = vanishes_below(apply_polynomial(c, variable, q_poly(j, d), v) - limit, variable, j);
  return out;
}

std::vector<int> dl_prefactor(const MonodromyData& data) {
  const int m = data.filtration_length();
  const int n = static_cast<int>(data.nilpotents.size());
  std::vector<int> word(static_cast<std::size_t>(m - 1), 0);
  if (word.empty()) return word;
  for (;;) {
    RationalMatrix prod = RationalMatrix::Identity(data.rank, data.rank);
    for (int i : word) prod = prod * data.nilpotents[static_cast<std::size_t>(i)];
    if (!is_zero(prod)) return word;
    std::size_t k = word.size();
    while (k > 0 && word[k - 1] == n - 1) word[--k] = 0;
    if (k == 0) break;
    ++word[k - 1];
  }
  throw std::logic_error("dl_prefactor: no nonzero word of length m - 1");
}

SeriesMatrix dl_operator(const LogConnection& c, const std::vector<int>& word, int l, int m, const SeriesMatrix& v) {
  SeriesMatrix acc = v;
  for (int i = 0; i < c.num_vars; ++i)
    for (int j = 1; j <= l; ++j) {
      const Rational inv_sq(1, j * j);
      for (int rep = 0; rep < m; ++rep) acc = acc - log_action(c, i, log_action(c, i, acc)) * inv_sq;
    }
  for (auto it = word.rbegin(); it != word.rend(); ++it) acc = log_action(c, *it, acc);
  return acc;
}

SeriesMatrix dl_closed_form(const MonodromyData& data, const std::vector<int>& word, int l, const SeriesMatrix& v) {
  const int m = data.filtration_length();
  const RationalMatrix id = RationalMatrix::Identity(data.rank, data.rank);
  SeriesMatrix out(v.rows(), v.cols(), v.window());

  std::map<Exponents, RationalMatrix> by_exponent;
  for (int r = 0; r < v.rows(); ++r)
    for (int s = 0; s < v.cols(); ++s)
      for (const auto& [e, x] : v(r, s).terms()) {
        auto [it, inserted] = by_exponent.try_emplace(e, RationalMatrix::Zero(v.rows(), v.cols()));
        it->second(r, s) = x;
      }

  for (const auto& [e, coeff] : by_exponent) {
    RationalMatrix op = id;
    for (std::size_t i = 0; i < data.nilpotents.size(); ++i) {
      const RationalMatrix shifted = Rational(e[i]) * id + data.nilpotents[i];
      const RationalMatrix sq = shifted * shifted;
      for (int j = 1; j <= l; ++j) {
        const RationalMatrix factor = id - sq * Rational(1, j * j);
        for (int rep = 0; rep < m; ++rep) op = op * factor;
      }
    }
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      const auto i = static_cast<std::size_t>(*it);
      op = (Rational(e[i]) * id + data.nilpotents[i]) * op;
    }
    const RationalMatrix result = op * coeff;
    for (int r = 0; r < v.rows(); ++r)
      for (int s = 0; s < v.cols(); ++s)
        if (result(r, s) != 0) out(r, s).add_term(e, result(r, s));
  }
  return out;
}

DlComparison dl_check(const LogConnection& c, int l, const SeriesMatrix& v, const Prime& p) {
  const IteratedGauge g = iterated_gauge(c, p);
  const std::vector<int> word = dl_prefactor(g.data);
  const int m = g.data.filtration_length();
  const SeriesMatrix& gauge = g.gauge.matrix;
  const SeriesMatrix w = v.restricted(c.window);

  DlComparison out;
  out.through_connection = dl_operator(c, word, l, m, w);
  out.closed_form = gauge * dl_closed_form(g.data, word, l, inverse(gauge) * w);
  out.matches = out.through_connection == out.closed_form;
  return out;
}

HorizontalSection horizontal_limit(const LogConnection& c, const SeriesMatrix& v, HorizontalStrategy strategy,
                                   const Prime& p, int budget) {
  const IteratedGauge g = iterated_gauge(c, p);
  const SeriesMatrix w = v.restricted(c.window);

  // Outputs stop changing once the index passes every exponent in the window;
  // one extra index confirms it.
  std::vector<SeriesMatrix> outputs;
  int last;
  if (strategy == HorizontalStrategy::dl_operators) {
    last = window_extent(c.window) + 1;
    if (last > budget) throw std::runtime_error("horizontal_limit: budget exhausted before stabilization");
    const std::vector<int> word = dl_prefactor(g.data);
    const int m = g.data.filtration_length();
    SeriesMatrix inner = w;
    auto finish = [&](const SeriesMatrix& x) {
      SeriesMatrix y = x;
      for (auto it = word.rbegin(); it != word.rend(); ++it) y = log_action(c, *it, y);
      return y;
    };
    outputs.push_back(finish(inner));
    for (int l = 1; l <= last; ++l) {
      for (int i = 0; i < c.num_vars; ++i)
        for (int rep = 0; rep < m; ++rep) inner = inner - log_action(c, i, log_action(c, i, inner)) * Rational(1, l * l);
      outputs.push_back(finish(inner));
    }
  } else {
    const int var = c.num_vars - 1;
    last = c.window.upper[static_cast<std::size_t>(var)] + 1;
    if (last > budget) throw std::runtime_error("horizontal_limit: budget exhausted before stabilization");
    const int d = nilpotency_index(g.data.nilpotents.back());
    for (int j = 0; j <= last; ++j) outputs.push_back(apply_polynomial(c, var, q_poly(j, d), w));
  }

  HorizontalSection out;
  out.section = outputs.back();
  out.stabilized_at = last;
  while (out.stabilized_at > 0 && outputs[static_cast<std::size_t>(out.stabilized_at) - 1] == out.section)
    --out.stabilized_at;
  out.horizontal = is_horizontal(c, out.section);
  return out;
}

HorizontalSection horizontal_limit(const LogConnection& c, HorizontalStrategy strategy, const Prime& p, int budget) {
  for (int l = 0; l < c.rank; ++l) {
    HorizontalSection h = horizontal_limit(c, basis_section(c.rank, l, c.window), strategy, p, budget);
    if (!h.section.is_zero()) {
      h.generator = l;
      return h;
    }
  }
  throw std::runtime_error("horizontal_limit: every basis vector has zero limit");
}

SeriesMatrix horizontal_space(const LogConnection& c, const Prime& p) {
  const IteratedGauge g = iterated_gauge(c, p);
  return g.gauge.matrix * joint_kernel(g.data.nilpotents);
}

UnipotentFiltration unipotent_filtration(const LogConnection& c, const Prime& p) {
  const IteratedGauge g = iterated_gauge(c, p);
  UnipotentFiltration f;
  f.data = g.data;
  const int r = c.rank;

  RationalMatrix basis(r, 0);
  RationalMatrix s(0, r);
  for (const auto& n : f.data.nilpotents) {
    RationalMatrix grown(s.rows() + r, r);
    grown << s, n;
    s = grown;
  }
  while (static_cast<int>(basis.cols()) < r) {
    const RationalMatrix ker = kernel(s);
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
      if (basis.cols() > 0 && in_span(basis, ker.col(k))) continue;
      RationalMatrix grown(r, basis.cols() + 1);
      grown << basis, ker.col(k);
      basis = grown;
    }
    f.dims.push_back(static_cast<int>(basis.cols()));
    if (static_cast<int>(basis.cols()) == r) break;
    if (f.dims.size() > static_cast<std::size_t>(r)) throw std::logic_error("unipotent_filtration: no progress");

    // Next level: vectors mapped into the current level by every N_i.
    const RationalMatrix rows = row_basis(s);
    RationalMatrix next(0, r);
    for (const auto& n : f.data.nilpotents) {
      RationalMatrix grown(next.rows() + rows.rows(), r);
      grown << next, rows * n;
      next = grown;
    }
    s = next;
  }

  f.adapted_basis = basis;
  f.total_gauge = g.gauge.matrix * basis;
  const RationalMatrix inv = inverse(basis);
  f.strictly_block_upper_triangular = true;
  for (const auto& n : f.data.nilpotents) {
    RationalMatrix conj = inv * n * basis;
    int block_start = 0;
    for (int dim : f.dims) {
      for (int col = block_start; col < dim; ++col)
        for (int row = block_start; row < r; ++row)
          if (conj(row, col) != 0) f.strictly_block_upper_triangular = false;
      block_start = dim;
    }
    f.conjugated.push_back(std::move(conj));
  }
  return f;
}

}  // namespace padic
