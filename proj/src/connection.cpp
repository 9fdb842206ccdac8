#include "padic/connection.hpp"

#include <algorithm>
#include <string>

namespace padic {

LogConnection::LogConnection(int rank_, SeriesWindow window_, std::vector<SeriesMatrix> matrices_, Form form_,
                             Rational outer_radius_exp_)
    : rank(rank_), num_vars(window_.num_vars()), window(std::move(window_)), matrices(std::move(matrices_)),
      form(form_), outer_radius_exp(std::move(outer_radius_exp_)) {
  if (rank < 1) throw std::invalid_argument("connection rank must be positive");
  if (static_cast<int>(matrices.size()) != num_vars)
    throw std::invalid_argument("connection needs one matrix per variable");
  if (outer_radius_exp < 0) throw std::invalid_argument("outer radius exponent must be >= 0");
  for (auto& m : matrices) {
    if (m.rows() != rank || m.cols() != rank) throw std::invalid_argument("connection matrix has wrong shape");
    if (m.window() != window) m = m.restricted(window);
  }
}

LogConnection LogConnection::restricted(const SeriesWindow& w) const {
  LogConnection out = *this;
  out.window = w;
  for (auto& m : out.matrices) m = m.restricted(w);
  return out;
}

void MonodromyData::validate() const {
  for (std::size_t i = 0; i < nilpotents.size(); ++i) {
    const auto& a = nilpotents[i];
    if (a.rows() != rank || a.cols() != rank) throw std::invalid_argument("monodromy matrix has wrong shape");
    if (!is_nilpotent(a)) throw std::invalid_argument("monodromy matrix " + std::to_string(i) + " is not nilpotent");
    for (std::size_t j = 0; j < i; ++j)
      if (!is_zero(commutator(a, nilpotents[j])))
        throw std::invalid_argument("monodromy matrices " + std::to_string(j) + " and " + std::to_string(i) +
                                    " do not commute");
  }
}

int MonodromyData::filtration_length() const {
  // Products of m matrices vanish iff the span of all words of length m is 0.
  std::vector<RationalMatrix> words{RationalMatrix::Identity(rank, rank)};
  for (int m = 1; m <= rank + 1; ++m) {
    std::vector<RationalMatrix> next;
    for (const auto& w : words)
      for (const auto& a : nilpotents) {
        RationalMatrix p = a * w;
        if (!is_zero(p)) next.push_back(std::move(p));
      }
    if (next.empty()) return m;
    words = std::move(next);
  }
  throw std::invalid_argument("monodromy data is not jointly nilpotent");
}

NotUnipotent::NotUnipotent(int variable, RationalMatrix residue)
    : std::runtime_error("residue along t_" + std::to_string(variable) + " = 0 is not nilpotent"),
      variable_(variable), residue_(std::move(residue)) {}

RationalMatrix NotUnipotent::witness_power() const {
  RationalMatrix p = RationalMatrix::Identity(residue_.rows(), residue_.cols());
  for (Eigen::Index k = 0; k < residue_.rows(); ++k) p = p * residue_;
  return p;
}

namespace {

SeriesMatrix plain_derivative(const SeriesMatrix& m, const LogConnection& c, int i) {
  return c.form == LogConnection::Form::logarithmic ? log_derivative(m, i) : partial_derivative(m, i);
}

}  // namespace

IntegrabilityReport validate_integrability(const LogConnection& c, const Prime& p) {
  IntegrabilityReport report;
  const RadiusTuple unit = RadiusTuple::uniform(c.num_vars, 0);
  for (int i = 0; i < c.num_vars; ++i)
    for (int j = i + 1; j < c.num_vars; ++j) {
      const auto& ni = c.matrices[static_cast<std::size_t>(i)];
      const auto& nj = c.matrices[static_cast<std::size_t>(j)];
      SeriesMatrix r = plain_derivative(nj, c, i) - plain_derivative(ni, c, j) + (ni * nj - nj * ni);
      NormExp norm = gauss_norm(r, unit, p);
      if (!norm.is_zero()) report.passes = false;
      report.pairs.push_back({i, j, std::move(r), std::move(norm)});
    }
  return report;
}

ResidueMatrix residue(const LogConnection& c, int i) {
  if (i < 0 || i >= c.num_vars) throw std::out_of_range("residue: variable index out of range");
  const auto k = static_cast<std::size_t>(i);
  if (c.window.lower[k] != 0) throw std::invalid_argument("residue: variable is not a power-series variable");
  if (c.form != LogConnection::Form::logarithmic) throw std::invalid_argument("residue: needs logarithmic form");
  const auto& m = c.matrices[k];
  ResidueMatrix out;
  out.variable = i;
  out.matrix = m.constant_part();
  for (int r = 0; r < m.rows(); ++r)
    for (int s = 0; s < m.cols(); ++s)
      for (const auto& [j, v] : m(r, s).terms())
        if (j[k] == 0 && std::any_of(j.begin(), j.end(), [](int x) { return x != 0; }))
          out.has_nonconstant_terms = true;
  out.nilpotency_index = nilpotency_index(out.matrix);
  out.nilpotent = out.nilpotency_index > 0;
  return out;
}

LogConnection build_unipotent(const MonodromyData& m, const SeriesWindow& window) {
  m.validate();
  if (static_cast<int>(m.nilpotents.size()) != window.num_vars())
    throw std::invalid_argument("build_unipotent: one matrix per variable required");
  std::vector<SeriesMatrix> ms;
  for (const auto& a : m.nilpotents) ms.push_back(SeriesMatrix::from_constant(a, window));
  return LogConnection(m.rank, window, std::move(ms));
}

namespace {

// a + b computed on the union of lower bounds and the intersection of upper
// bounds, so poles introduced by t^{-1} survive.
SeriesMatrix add_widened(const SeriesMatrix& a, const SeriesMatrix& b) {
  SeriesWindow w = a.window();
  for (std::size_t i = 0; i < w.lower.size(); ++i) {
    w.lower[i] = std::min(a.window().lower[i], b.window().lower[i]);
    w.upper[i] = std::min(a.window().upper[i], b.window().upper[i]);
    if (w.upper[i] < w.lower[i]) w.upper[i] = w.lower[i];
  }
  SeriesMatrix out = a.restricted(w);
  out += b.restricted(w);
  return out;
}

}  // namespace

SeriesMatrix log_action(const LogConnection& c, int i, const SeriesMatrix& v) {
  const auto& n = c.matrices[static_cast<std::size_t>(i)];
  if (c.form == LogConnection::Form::logarithmic) return log_derivative(v, i) + n * v;
  return shift(derivative_action(c, i, v), i, 1);
}

SeriesMatrix derivative_action(const LogConnection& c, int i, const SeriesMatrix& v) {
  const auto& n = c.matrices[static_cast<std::size_t>(i)];
  if (c.form == LogConnection::Form::plain) return add_widened(partial_derivative(v, i), n * v);
  return add_widened(partial_derivative(v, i), shift(n * v, i, -1));
}

LogConnection gauge_transform(const LogConnection& c, const SeriesMatrix& m) {
  if (c.form != LogConnection::Form::logarithmic) throw std::invalid_argument("gauge_transform: needs logarithmic form");
  const SeriesMatrix m_inv = inverse(m.restricted(c.window));
  std::vector<SeriesMatrix> out;
  for (int i = 0; i < c.num_vars; ++i)
    out.push_back(m_inv * (c.matrices[static_cast<std::size_t>(i)] * m + log_derivative(m, i)));
  return LogConnection(c.rank, c.window, std::move(out), c.form, c.outer_radius_exp);
}

}  // namespace padic
