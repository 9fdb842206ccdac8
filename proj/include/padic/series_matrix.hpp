#pragma once

#include "padic/matrix.hpp"
#include "padic/series.hpp"

#include <vector>

namespace padic {

/// Dense matrix of truncated series sharing one window. Column vectors
/// (cols() == 1) double as sections of a free module in a fixed basis.
class SeriesMatrix {
public:
  SeriesMatrix() = default;
  SeriesMatrix(int rows, int cols, const SeriesWindow& window);

  static SeriesMatrix identity(int n, const SeriesWindow& window);
  static SeriesMatrix from_constant(const RationalMatrix& m, const SeriesWindow& window);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const SeriesWindow& window() const { return window_; }

  TruncatedSeries& operator()(int i, int j) { return entries_[index(i, j)]; }
  const TruncatedSeries& operator()(int i, int j) const { return entries_[index(i, j)]; }

  bool is_zero() const;
  bool is_constant() const;
  /// Matrix of constant terms.
  RationalMatrix constant_part() const;
  /// Coefficient matrix of t^j.
  RationalMatrix coefficient(const Exponents& j) const;
  /// Some entry dropped terms outside the window.
  bool truncated() const;

  SeriesMatrix restricted(const SeriesWindow& window) const;
  SeriesMatrix column(int j) const;

  SeriesMatrix& operator+=(const SeriesMatrix& other);
  SeriesMatrix& operator-=(const SeriesMatrix& other);
  SeriesMatrix& operator*=(const Rational& c);

  friend SeriesMatrix operator+(SeriesMatrix a, const SeriesMatrix& b) { return a += b; }
  friend SeriesMatrix operator-(SeriesMatrix a, const SeriesMatrix& b) { return a -= b; }
  friend SeriesMatrix operator*(SeriesMatrix a, const Rational& c) { return a *= c; }
  friend SeriesMatrix operator*(const Rational& c, SeriesMatrix a) { return a *= c; }
  friend SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator*(const RationalMatrix& a, const SeriesMatrix& b);
  friend SeriesMatrix operator*(const SeriesMatrix& a, const RationalMatrix& b);

  friend bool operator==(const SeriesMatrix&, const SeriesMatrix&) = default;

private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j);
  }

  int rows_ = 0;
  int cols_ = 0;
  SeriesWindow window_;
  std::vector<TruncatedSeries> entries_;
};

/// Entrywise t_i d/dt_i.
SeriesMatrix log_derivative(const SeriesMatrix& m, int i);
/// Entrywise d/dt_i.
SeriesMatrix partial_derivative(const SeriesMatrix& m, int i);
/// Entrywise multiplication by t_i^k.
SeriesMatrix shift(const SeriesMatrix& m, int i, int k);

NormExp gauss_norm(const SeriesMatrix& m, const RadiusTuple& r, const Prime& p);

/// Inverse of a matrix whose constant term is invertible, exact on the
/// window. Requires a power-series window.
SeriesMatrix inverse(const SeriesMatrix& m);

/// Basis vector e_k as a section.
SeriesMatrix basis_section(int rank, int k, const SeriesWindow& window);

}  // namespace padic
