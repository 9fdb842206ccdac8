#include "padic/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace padic {

SeriesWindow::SeriesWindow(std::vector<int> lower_bounds, std::vector<int> upper_bounds)
    : lower(std::move(lower_bounds)), upper(std::move(upper_bounds)) {
  if (lower.size() != upper.size()) throw std::invalid_argument("SeriesWindow: bound lists differ in length");
  if (lower.empty()) throw std::invalid_argument("SeriesWindow: at least one variable required");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] > 0) throw std::invalid_argument("SeriesWindow: lower bound must be <= 0");
    if (upper[i] < lower[i]) throw std::invalid_argument("SeriesWindow: upper bound below lower bound");
  }
}

SeriesWindow SeriesWindow::power_series(int num_vars, int order) {
  return SeriesWindow(std::vector<int>(static_cast<std::size_t>(num_vars), 0),
                      std::vector<int>(static_cast<std::size_t>(num_vars), order));
}

SeriesWindow SeriesWindow::laurent(int num_vars, int below, int order) {
  return SeriesWindow(std::vector<int>(static_cast<std::size_t>(num_vars), -below),
                      std::vector<int>(static_cast<std::size_t>(num_vars), order));
}

bool SeriesWindow::contains(const Exponents& j) const {
  if (j.size() != lower.size()) return false;
  for (std::size_t i = 0; i < j.size(); ++i)
    if (j[i] < lower[i] || j[i] > upper[i]) return false;
  return true;
}

bool SeriesWindow::is_power_series() const {
  return std::all_of(lower.begin(), lower.end(), [](int l) { return l == 0; });
}

SeriesWindow intersect(const SeriesWindow& a, const SeriesWindow& b) {
  if (a.num_vars() != b.num_vars()) throw std::invalid_argument("series windows differ in num_vars");
  SeriesWindow w = a;
  for (std::size_t i = 0; i < w.lower.size(); ++i) {
    w.lower[i] = std::max(a.lower[i], b.lower[i]);
    w.upper[i] = std::min(a.upper[i], b.upper[i]);
    // Disjoint ranges keep an empty-but-valid box at the lower edge.
    if (w.upper[i] < w.lower[i]) w.upper[i] = w.lower[i];
  }
  return w;
}

TruncatedSeries TruncatedSeries::constant(const SeriesWindow& window, const Rational& c) {
  return monomial(window, Exponents(static_cast<std::size_t>(window.num_vars()), 0), c);
}

TruncatedSeries TruncatedSeries::monomial(const SeriesWindow& window, const Exponents& j, const Rational& c) {
  TruncatedSeries s(window);
  s.add_term(j, c);
  return s;
}

Rational TruncatedSeries::coefficient(const Exponents& j) const {
  auto it = terms_.find(j);
  return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(const Exponents& j, const Rational& c) {
  if (!window_.contains(j)) throw std::out_of_range("TruncatedSeries: exponent outside window");
  accumulate(j, c);
}

void TruncatedSeries::accumulate(const Exponents& j, const Rational& c) {
  if (c == 0) return;
  if (!window_.contains(j)) {
    truncated_ = true;
    return;
  }
  auto [it, inserted] = terms_.try_emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TruncatedSeries TruncatedSeries::restricted(const SeriesWindow& window) const {
  TruncatedSeries out(window);
  out.truncated_ = truncated_;
  for (const auto& [j, c] : terms_) out.accumulate(j, c);
  return out;
}

Rational TruncatedSeries::constant_term() const {
  return coefficient(Exponents(static_cast<std::size_t>(num_vars()), 0));
}

void TruncatedSeries::check_compatible(const TruncatedSeries& other, const char* op) const {
  if (num_vars() != other.num_vars())
    throw std::invalid_argument(std::string("series ") + op + ": num_vars mismatch");
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  check_compatible(other, "add");
  if (window_ != other.window_) *this = restricted(intersect(window_, other.window_));
  truncated_ = truncated_ || other.truncated_;
  for (const auto& [j, c] : other.terms_) accumulate(j, c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  check_compatible(other, "subtract");
  if (window_ != other.window_) *this = restricted(intersect(window_, other.window_));
  truncated_ = truncated_ || other.truncated_;
  for (const auto& [j, c] : other.terms_) accumulate(j, -c);
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [j, v] : terms_) v *= c;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  a.check_compatible(b, "multiply");
  TruncatedSeries out(intersect(a.window_, b.window_));
  out.truncated_ = a.truncated_ || b.truncated_;
  const auto n = static_cast<std::size_t>(a.num_vars());
  Exponents j(n);
  for (const auto& [ja, ca] : a.terms_) {
    for (const auto& [jb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) j[i] = ja[i] + jb[i];
      out.accumulate(j, ca * cb);
    }
  }
  return out;
}

TruncatedSeries series_arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp kind) {
  return kind == SeriesOp::add ? a + b : a * b;
}

RadiusTuple::RadiusTuple(std::vector<Rational> e) : exponents(std::move(e)) {
  for (const auto& x : exponents)
    if (x < 0) throw std::invalid_argument("RadiusTuple: radius exponents must be >= 0");
}

RadiusTuple RadiusTuple::uniform(int num_vars, const Rational& e) {
  return RadiusTuple(std::vector<Rational>(static_cast<std::size_t>(num_vars), e));
}

NormExp gauss_norm(const TruncatedSeries& x, const RadiusTuple& r, const Prime& p) {
  if (r.num_vars() != x.num_vars()) throw std::invalid_argument("gauss_norm: radius tuple has wrong length");
  NormExp best = NormExp::zero();
  for (const auto& [j, c] : x.terms()) {
    Rational e = *p_valuation(c, p);
    for (std::size_t i = 0; i < j.size(); ++i) e += j[i] * r.exponents[i];
    best = max(best, NormExp(e));
  }
  return best;
}

CornerMaximum corner_maximum(const TruncatedSeries& x, const RadiusTuple& inner, const RadiusTuple& outer,
                             const Prime& p) {
  const int n = x.num_vars();
  if (inner.num_vars() != n || outer.num_vars() != n)
    throw std::invalid_argument("corner_maximum: radius tuples have wrong length");
  for (int i = 0; i < n; ++i)
    if (inner.exponents[i] < outer.exponents[i])
      throw std::invalid_argument("corner_maximum: inner radius exceeds outer radius");

  std::optional<CornerMaximum> best;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    RadiusTuple corner = inner;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) corner.exponents[i] = outer.exponents[i];
    NormExp value = gauss_norm(x, corner, p);
    if (!best || best->value < value) best = CornerMaximum{std::move(corner), std::move(value)};
  }
  return *best;
}

TruncatedSeries partial_derivative(const TruncatedSeries& x, int i) {
  SeriesWindow w = x.window();
  const auto k = static_cast<std::size_t>(i);
  if (w.lower[k] < 0) w.lower[k] -= 1;
  w.upper[k] = std::max(w.lower[k], w.upper[k] - 1);
  TruncatedSeries out(w);
  for (const auto& [j, c] : x.terms()) {
    if (j[k] == 0) continue;
    Exponents shifted = j;
    shifted[k] -= 1;
    out.accumulate(shifted, c * j[k]);
  }
  return x.truncated() ? out.restricted(w) : out;
}

TruncatedSeries log_derivative(const TruncatedSeries& x, int i) {
  const auto k = static_cast<std::size_t>(i);
  TruncatedSeries out(x.window());
  for (const auto& [j, c] : x.terms())
    if (j[k] != 0) out.accumulate(j, c * j[k]);
  return out;
}

TruncatedSeries shift(const TruncatedSeries& x, int i, int k) {
  SeriesWindow w = x.window();
  const auto v = static_cast<std::size_t>(i);
  w.lower[v] = std::min(0, w.lower[v] + k);
  w.upper[v] += k;
  TruncatedSeries out(w);
  for (const auto& [j, c] : x.terms()) {
    Exponents shifted = j;
    shifted[v] += k;
    out.accumulate(shifted, c);
  }
  return out;
}

TailDecayWitness tail_decay_witness(const TruncatedSeries& x, const RadiusTuple& r, const Bracket& bracket,
                                    const Prime& p) {
  const int n = x.num_vars();
  if (r.num_vars() != n) throw std::invalid_argument("tail_decay_witness: radius tuple has wrong length");
  const auto& e = r.exponents;
  const Rational e_min = *std::min_element(e.begin(), e.end());
  const Rational e_max = *std::max_element(e.begin(), e.end());
  if (!(e_min > bracket.outer_exp))
    throw std::invalid_argument("tail_decay_witness: radius not strictly inside the outer bracket");
  if (bracket.inner_exp && !(e_max < *bracket.inner_exp))
    throw std::invalid_argument("tail_decay_witness: radius not strictly inside the inner bracket");

  TailDecayWitness w;
  w.outer_prime_exp = (bracket.outer_exp + e_min) / 2;
  w.inner_prime_exp = bracket.inner_exp ? (*bracket.inner_exp + e_max) / 2 : Rational(0);
  w.eta_exp = 0;
  for (const auto& ei : e) {
    Rational outer_ratio = w.outer_prime_exp - ei;  // b'/r_i
    if (bracket.inner_exp) w.eta_exp += std::max(ei - w.inner_prime_exp, outer_ratio);
    else w.eta_exp += outer_ratio;
  }

  int edge = 0;
  for (int i = 0; i < n; ++i)
    edge = std::max({edge, -x.window().lower[static_cast<std::size_t>(i)], x.window().upper[static_cast<std::size_t>(i)]});
  const int length = edge + 1;

  std::vector<RadiusTuple> corners;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (!bracket.inner_exp && mask != (1u << n) - 1) continue;
    RadiusTuple s = RadiusTuple::uniform(n, w.outer_prime_exp);
    for (int i = 0; i < n; ++i)
      if (!(mask & (1u << i))) s.exponents[static_cast<std::size_t>(i)] = w.inner_prime_exp;
    corners.push_back(std::move(s));
  }

  w.certified = true;
  for (int l = 1; l <= length; ++l) {
    TruncatedSeries tail(x.window());
    for (const auto& [j, c] : x.terms()) {
      if (std::all_of(j.begin(), j.end(), [l](int ji) { return ji >= l || ji <= -l; })) tail.accumulate(j, c);
    }
    NormExp at_r = gauss_norm(tail, r, p);
    NormExp bound = NormExp::zero();
    for (const auto& s : corners) bound = max(bound, gauss_norm(tail, s, p));
    NormExp scaled = at_r * NormExp(w.eta_exp * l);
    if (bound < scaled) w.certified = false;
    if (!w.corner_bounds.empty() && w.corner_bounds.back() < bound) w.certified = false;
    w.tail_norms.push_back(std::move(at_r));
    w.corner_bounds.push_back(std::move(bound));
  }
  return w;
}

}  // namespace padic
