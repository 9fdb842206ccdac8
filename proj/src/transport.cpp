#include "padic/connection.hpp"

#include <algorithm>
#include <numeric>

namespace padic {

namespace {

Rational factorial_product(const Exponents& i) {
  Rational f = 1;
  for (int x : i) f *= factorial(static_cast<unsigned>(x));
  return f;
}

Rational binomial(long n, int k) {
  // Generalized binomial coefficient, valid for negative n.
  Rational b = 1;
  for (int i = 0; i < k; ++i) b = b * Rational(n - i) / Rational(i + 1);
  return b;
}

Rational factorial_product_valuation(const Exponents& i, const Prime& p) {
  Rational v = 0;
  for (int x : i) v += Rational(static_cast<long>(factorial_valuation(static_cast<std::uint64_t>(x), p)));
  return v;
}

int total(const Exponents& i) { return std::accumulate(i.begin(), i.end(), 0); }

// Odometer over [0, bound]^n in lexicographic order; false after the last.
bool next_in_box(Exponents& i, int bound) {
  for (std::size_t k = i.size(); k-- > 0;) {
    if (i[k] < bound) {
      ++i[k];
      return true;
    }
    i[k] = 0;
  }
  return false;
}

Exponents concat(std::initializer_list<const Exponents*> parts) {
  Exponents out;
  for (const auto* p : parts) out.insert(out.end(), p->begin(), p->end());
  return out;
}

}  // namespace

bool scaled_sequence_grows(const std::vector<NormExp>& scaled, int start) {
  const int last = static_cast<int>(scaled.size()) - 1;
  const int length = last - start + 1;
  if (start < 0 || length < 3) return false;
  const int third = length / 3;
  auto sup = [&](int from, int to) {
    NormExp m = NormExp::zero();
    for (int k = from; k <= to; ++k) m = max(m, scaled[static_cast<std::size_t>(k)]);
    return m;
  };
  const NormExp first = sup(start, start + third - 1);
  const NormExp middle = sup(start + third, start + 2 * third - 1);
  const NormExp final_stretch = sup(start + 2 * third, last);
  return (middle.is_zero() || middle < first) && (final_stretch.is_zero() || final_stretch < middle);
}

EtaConvergenceReport eta_convergence_check(const LogConnection& c, const SeriesMatrix& v, const Rational& eta_exp,
                                           const RadiusTuple& r, const Prime& p, int budget) {
  if (!(eta_exp > 0)) throw std::invalid_argument("eta_convergence_check: eta must be below 1");
  if (v.rows() != c.rank || v.cols() != 1) throw std::invalid_argument("eta_convergence_check: section has wrong shape");
  if (budget < 0) throw std::invalid_argument("eta_convergence_check: negative budget");

  // Each derivative loses one known degree, so the Taylor terms are exact
  // only up to the smallest truncation order.
  const auto& up = v.window().upper;
  const int order = std::clamp(*std::min_element(up.begin(), up.end()), 0, budget);

  EtaConvergenceReport report;
  report.order = order;
  std::map<Exponents, SeriesMatrix> level{{Exponents(static_cast<std::size_t>(c.num_vars), 0), v}};
  for (int k = 0;; ++k) {
    NormExp best = NormExp::zero();
    for (const auto& [i, w] : level) {
      NormExp g = gauss_norm(w, r, p);
      if (!g.is_zero()) g = NormExp(g.exponent() - factorial_product_valuation(i, p));
      best = max(best, g);
    }
    report.term_norms.push_back(best);
    report.scaled_norms.push_back(best * NormExp(eta_exp * k));
    if (k == order) break;

    // Derivatives commute, so each I is reached once by appending indices in
    // nondecreasing order.
    std::map<Exponents, SeriesMatrix> next;
    for (const auto& [i, w] : level) {
      int last = 0;
      for (int j = 0; j < c.num_vars; ++j)
        if (i[static_cast<std::size_t>(j)] > 0) last = j;
      for (int j = last; j < c.num_vars; ++j) {
        Exponents ij = i;
        ++ij[static_cast<std::size_t>(j)];
        next.emplace(std::move(ij), derivative_action(c, j, w));
      }
    }
    level = std::move(next);
  }
  report.certified = scaled_sequence_grows(report.scaled_norms, 1);
  return report;
}

TaylorTransport taylor_transport(const LogConnection& c, int order, const Prime&) {
  if (order < 0) throw std::invalid_argument("taylor_transport: negative order");
  TaylorTransport tt;
  tt.order = order;
  tt.num_vars = c.num_vars;
  Exponents i(static_cast<std::size_t>(c.num_vars), 0);
  tt.coefficients.emplace(i, SeriesMatrix::identity(c.rank, c.window));
  while (next_in_box(i, order)) {
    // E_I = (D_j - (i_j - 1)) E_{I - e_j} with j the last nonzero index.
    std::size_t j = i.size() - 1;
    while (i[j] == 0) --j;
    Exponents prev = i;
    --prev[j];
    const SeriesMatrix& e = tt.coefficients.at(prev);
    tt.coefficients.emplace(i, log_action(c, static_cast<int>(j), e) - e * Rational(prev[j]));
  }
  return tt;
}

SeriesMatrix TaylorTransport::as_series() const {
  const SeriesMatrix& e0 = coefficients.begin()->second;
  const SeriesWindow& tw = e0.window();
  std::vector<int> lower = tw.lower, upper = tw.upper;
  for (int k = 0; k < num_vars; ++k) {
    lower.push_back(0);
    upper.push_back(order);
  }
  SeriesWindow w(lower, upper);
  SeriesMatrix out(e0.rows(), e0.cols(), w);
  for (const auto& [i, e] : coefficients) {
    const Rational inv = 1 / factorial_product(i);
    for (int r = 0; r < e.rows(); ++r)
      for (int s = 0; s < e.cols(); ++s)
        for (const auto& [j, v] : e(r, s).terms()) out(r, s).accumulate(concat({&j, &i}), v * inv);
  }
  return out;
}

CocycleCheck transport_cocycle_check(const TaylorTransport& tt) {
  const SeriesMatrix& e0 = tt.coefficients.begin()->second;
  const SeriesWindow& tw = e0.window();
  if (!tw.is_power_series()) throw std::invalid_argument("transport_cocycle_check: needs a power-series window");
  const int n = tt.num_vars;
  const int order = tt.order;
  const int rank = e0.rows();

  // Variables (t, a, b), each block of size n.
  std::vector<int> lower(static_cast<std::size_t>(3 * n), 0), upper = tw.upper;
  for (int k = 0; k < 2 * n; ++k) upper.push_back(order);
  const SeriesWindow w(lower, upper);
  const Exponents none(static_cast<std::size_t>(n), 0);

  // (a + b + ab)^i = ((1+a)(1+b) - 1)^i, one coordinate, truncated at order.
  std::vector<std::map<std::pair<int, int>, Rational>> mixed(static_cast<std::size_t>(order) + 1);
  mixed[0][{0, 0}] = 1;
  for (int i = 1; i <= order; ++i)
    for (const auto& [xy, v] : mixed[static_cast<std::size_t>(i) - 1])
      for (auto [dx, dy] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
        const int x = xy.first + dx, y = xy.second + dy;
        if (x <= order && y <= order) mixed[static_cast<std::size_t>(i)][{x, y}] += v;
      }

  SeriesMatrix left_a(rank, rank, w), left_b(rank, rank, w), right(rank, rank, w);
  for (const auto& [i, e] : tt.coefficients) {
    const Rational inv = 1 / factorial_product(i);
    for (int r = 0; r < rank; ++r)
      for (int s = 0; s < rank; ++s)
        for (const auto& [j, v] : e(r, s).terms()) {
          const Rational c = v * inv;
          left_a(r, s).accumulate(concat({&j, &i, &none}), c);

          // E_I(t(1+a)) b^I: expand (1+a)^J.
          Exponents m(static_cast<std::size_t>(n), 0);
          do {
            Rational coeff = c;
            for (int k = 0; k < n; ++k) coeff *= binomial(j[static_cast<std::size_t>(k)], m[static_cast<std::size_t>(k)]);
            left_b(r, s).accumulate(concat({&j, &m, &i}), coeff);
          } while (next_in_box(m, order));

          // E_I(t) (a + b + ab)^I, product over coordinates.
          std::vector<std::pair<Exponents, Rational>> acc{{concat({&j, &none, &none}), c}};
          for (int k = 0; k < n; ++k) {
            std::vector<std::pair<Exponents, Rational>> grown;
            for (const auto& [key, val] : acc)
              for (const auto& [xy, mv] : mixed[static_cast<std::size_t>(i[static_cast<std::size_t>(k)])]) {
                Exponents kk = key;
                kk[static_cast<std::size_t>(n + k)] += xy.first;
                kk[static_cast<std::size_t>(2 * n + k)] += xy.second;
                grown.emplace_back(std::move(kk), val * mv);
              }
            acc = std::move(grown);
          }
          for (const auto& [key, val] : acc) right(r, s).accumulate(key, val);
        }
  }

  const SeriesMatrix left = left_a * left_b;
  CocycleCheck out;
  out.holds = true;
  auto in_range = [&](const Exponents& key) {
    for (int k = 0; k < n; ++k)
      if (key[static_cast<std::size_t>(n + k)] + key[static_cast<std::size_t>(2 * n + k)] > order) return false;
    return true;
  };
  for (int r = 0; r < rank; ++r)
    for (int s = 0; s < rank; ++s) {
      std::map<Exponents, Rational> diff;
      for (const auto& [key, v] : left(r, s).terms())
        if (in_range(key)) diff[key] += v;
      for (const auto& [key, v] : right(r, s).terms())
        if (in_range(key)) diff[key] -= v;
      out.compared_terms += diff.size();
      for (const auto& [key, v] : diff)
        if (v != 0) out.holds = false;
    }
  return out;
}

EtaConvergenceReport transport_decay(const TaylorTransport& tt, const Rational& eta_exp, const RadiusTuple& r,
                                     const Prime& p) {
  if (!(eta_exp > 0)) throw std::invalid_argument("transport_decay: eta must be below 1");
  EtaConvergenceReport report;
  report.order = tt.order;
  report.term_norms.assign(static_cast<std::size_t>(tt.order) + 1, NormExp::zero());
  for (const auto& [i, e] : tt.coefficients) {
    const int k = total(i);
    if (k > tt.order) continue;
    NormExp g = gauss_norm(e, r, p);
    if (g.is_zero()) continue;
    auto& slot = report.term_norms[static_cast<std::size_t>(k)];
    slot = max(slot, NormExp(g.exponent() - factorial_product_valuation(i, p)));
  }
  for (int k = 0; k <= tt.order; ++k)
    report.scaled_norms.push_back(report.term_norms[static_cast<std::size_t>(k)] * NormExp(eta_exp * k));
  report.certified = scaled_sequence_grows(report.scaled_norms, 1);
  return report;
}

}  // namespace padic
