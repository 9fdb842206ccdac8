#include "padic/series_matrix.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace padic {

SeriesMatrix::SeriesMatrix(int rows, int cols, const SeriesWindow& window)
    : rows_(rows), cols_(cols), window_(window),
      entries_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), TruncatedSeries(window)) {}

SeriesMatrix SeriesMatrix::identity(int n, const SeriesWindow& window) {
  SeriesMatrix m(n, n, window);
  for (int i = 0; i < n; ++i) m(i, i) = TruncatedSeries::constant(window, 1);
  return m;
}

SeriesMatrix SeriesMatrix::from_constant(const RationalMatrix& c, const SeriesWindow& window) {
  SeriesMatrix m(static_cast<int>(c.rows()), static_cast<int>(c.cols()), window);
  for (int i = 0; i < m.rows_; ++i)
    for (int j = 0; j < m.cols_; ++j)
      if (c(i, j) != 0) m(i, j) = TruncatedSeries::constant(window, c(i, j));
  return m;
}

bool SeriesMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const auto& s) { return s.is_zero(); });
}

bool SeriesMatrix::is_constant() const {
  const Exponents origin(static_cast<std::size_t>(window_.num_vars()), 0);
  for (const auto& s : entries_)
    for (const auto& [j, c] : s.terms())
      if (j != origin) return false;
  return true;
}

RationalMatrix SeriesMatrix::constant_part() const {
  return coefficient(Exponents(static_cast<std::size_t>(window_.num_vars()), 0));
}

RationalMatrix SeriesMatrix::coefficient(const Exponents& j) const {
  RationalMatrix out(rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c).coefficient(j);
  return out;
}

bool SeriesMatrix::truncated() const {
  return std::any_of(entries_.begin(), entries_.end(), [](const auto& s) { return s.truncated(); });
}

SeriesMatrix SeriesMatrix::restricted(const SeriesWindow& window) const {
  SeriesMatrix out(rows_, cols_, window);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].restricted(window);
  return out;
}

SeriesMatrix SeriesMatrix::column(int j) const {
  SeriesMatrix out(rows_, 1, window_);
  for (int i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, j);
  return out;
}

SeriesMatrix& SeriesMatrix::operator+=(const SeriesMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("SeriesMatrix +: shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  window_ = intersect(window_, other.window_);
  return *this;
}

SeriesMatrix& SeriesMatrix::operator-=(const SeriesMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw std::invalid_argument("SeriesMatrix -: shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  window_ = intersect(window_, other.window_);
  return *this;
}

SeriesMatrix& SeriesMatrix::operator*=(const Rational& c) {
  for (auto& e : entries_) e *= c;
  return *this;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("SeriesMatrix *: shape mismatch");
  SeriesMatrix out(a.rows_, b.cols_, intersect(a.window_, b.window_));
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) {
      TruncatedSeries acc(out.window_);
      for (int k = 0; k < a.cols_; ++k) {
        const auto& x = a(i, k);
        const auto& y = b(k, j);
        if (x.is_zero() || y.is_zero()) continue;
        acc += x * y;
      }
      out(i, j) = std::move(acc);
    }
  return out;
}

SeriesMatrix operator*(const RationalMatrix& a, const SeriesMatrix& b) {
  if (a.cols() != b.rows_) throw std::invalid_argument("SeriesMatrix *: shape mismatch");
  SeriesMatrix out(static_cast<int>(a.rows()), b.cols_, b.window_);
  for (int i = 0; i < out.rows_; ++i)
    for (int j = 0; j < b.cols_; ++j) {
      TruncatedSeries acc(b.window_);
      for (int k = 0; k < b.rows_; ++k)
        if (a(i, k) != 0 && !b(k, j).is_zero()) acc += b(k, j) * a(i, k);
      out(i, j) = std::move(acc);
    }
  return out;
}

SeriesMatrix operator*(const SeriesMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows()) throw std::invalid_argument("SeriesMatrix *: shape mismatch");
  SeriesMatrix out(a.rows_, static_cast<int>(b.cols()), a.window_);
  for (int i = 0; i < a.rows_; ++i)
    for (int j = 0; j < out.cols_; ++j) {
      TruncatedSeries acc(a.window_);
      for (int k = 0; k < a.cols_; ++k)
        if (b(k, j) != 0 && !a(i, k).is_zero()) acc += a(i, k) * b(k, j);
      out(i, j) = std::move(acc);
    }
  return out;
}

namespace {

template <typename F>
SeriesMatrix map_entries(const SeriesMatrix& m, F f) {
  if (m.rows() == 0 || m.cols() == 0) return m;
  SeriesWindow w = f(m(0, 0)).window();
  SeriesMatrix out(m.rows(), m.cols(), w);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = f(m(i, j));
  return out;
}

}  // namespace

SeriesMatrix log_derivative(const SeriesMatrix& m, int i) {
  return map_entries(m, [i](const TruncatedSeries& s) { return log_derivative(s, i); });
}

SeriesMatrix partial_derivative(const SeriesMatrix& m, int i) {
  return map_entries(m, [i](const TruncatedSeries& s) { return partial_derivative(s, i); });
}

SeriesMatrix shift(const SeriesMatrix& m, int i, int k) {
  return map_entries(m, [i, k](const TruncatedSeries& s) { return shift(s, i, k); });
}

NormExp gauss_norm(const SeriesMatrix& m, const RadiusTuple& r, const Prime& p) {
  NormExp best = NormExp::zero();
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) best = max(best, gauss_norm(m(i, j), r, p));
  return best;
}

SeriesMatrix inverse(const SeriesMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: series matrix is not square");
  if (!m.window().is_power_series()) throw std::invalid_argument("inverse: requires a power-series window");
  const SeriesWindow& w = m.window();
  const int n = m.rows();
  const int total_degree = std::accumulate(w.upper.begin(), w.upper.end(), 0);

  // Newton iteration P <- P (2 - M P) doubles the number of correct degrees.
  SeriesMatrix p = SeriesMatrix::from_constant(inverse(m.constant_part()), w);
  const SeriesMatrix two = SeriesMatrix::identity(n, w) * Rational(2);
  for (int correct = 1; correct <= total_degree; correct *= 2) p = p * (two - m * p);
  return p;
}

SeriesMatrix basis_section(int rank, int k, const SeriesWindow& window) {
  SeriesMatrix v(rank, 1, window);
  v(k, 0) = TruncatedSeries::constant(window, 1);
  return v;
}

}  // namespace padic
