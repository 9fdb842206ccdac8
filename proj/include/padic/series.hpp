#pragma once

#include "padic/scalars.hpp"

#include <map>
#include <optional>
#include <vector>

namespace padic {

using Exponents = std::vector<int>;

/// Per-variable exponent box lower_i <= j_i <= upper_i. A lower bound of 0
/// marks a power-series variable, a negative one a Laurent variable. The upper
/// bound is the truncation order: coefficients above it are unknown, not zero.
struct SeriesWindow {
  std::vector<int> lower;
  std::vector<int> upper;

  SeriesWindow() = default;
  SeriesWindow(std::vector<int> lower_bounds, std::vector<int> upper_bounds);

  static SeriesWindow power_series(int num_vars, int order);
  static SeriesWindow laurent(int num_vars, int below, int order);

  int num_vars() const { return static_cast<int>(lower.size()); }
  bool contains(const Exponents& j) const;
  bool is_power_series() const;

  friend bool operator==(const SeriesWindow&, const SeriesWindow&) = default;
};

/// Common window of two operands: max of lowers, min of uppers.
SeriesWindow intersect(const SeriesWindow& a, const SeriesWindow& b);

/// Multivariate Laurent series known on a window. Zero coefficients are
/// never stored.
class TruncatedSeries {
public:
  using Terms = std::map<Exponents, Rational>;

  TruncatedSeries() = default;
  explicit TruncatedSeries(SeriesWindow window) : window_(std::move(window)) {}

  static TruncatedSeries constant(const SeriesWindow& window, const Rational& c);
  static TruncatedSeries monomial(const SeriesWindow& window, const Exponents& j, const Rational& c);

  const SeriesWindow& window() const { return window_; }
  int num_vars() const { return window_.num_vars(); }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// True when some operation producing this series dropped nonzero terms
  /// that fell outside the window.
  bool truncated() const { return truncated_; }

  Rational coefficient(const Exponents& j) const;
  /// Adds c to the coefficient of t^j. Throws std::out_of_range when j is
  /// outside the window.
  void add_term(const Exponents& j, const Rational& c);
  /// Like add_term, but silently records truncation instead of throwing.
  void accumulate(const Exponents& j, const Rational& c);

  /// Re-windows the series, dropping terms that fall outside.
  TruncatedSeries restricted(const SeriesWindow& window) const;
  /// Constant term (all exponents zero).
  Rational constant_term() const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(const Rational& c);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator-(TruncatedSeries a) { return a *= Rational(-1); }
  friend TruncatedSeries operator*(TruncatedSeries a, const Rational& c) { return a *= c; }
  friend TruncatedSeries operator*(const Rational& c, TruncatedSeries a) { return a *= c; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Coefficient equality on the window; the truncation flag is ignored.
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.window_ == b.window_ && a.terms_ == b.terms_;
  }

private:
  void check_compatible(const TruncatedSeries& other, const char* op) const;

  SeriesWindow window_;
  Terms terms_;
  bool truncated_ = false;
};

enum class SeriesOp { add, mul };
TruncatedSeries series_arith(const TruncatedSeries& a, const TruncatedSeries& b, SeriesOp kind);

/// Radii r_i = p^(-e_i) with e_i >= 0.
struct RadiusTuple {
  std::vector<Rational> exponents;

  RadiusTuple() = default;
  explicit RadiusTuple(std::vector<Rational> e);
  static RadiusTuple uniform(int num_vars, const Rational& e);

  int num_vars() const { return static_cast<int>(exponents.size()); }
  friend bool operator==(const RadiusTuple&, const RadiusTuple&) = default;
};

/// sup_J |c_J| r^J in exponent scale.
NormExp gauss_norm(const TruncatedSeries& x, const RadiusTuple& r, const Prime& p);

struct CornerMaximum {
  RadiusTuple corner;
  NormExp value;
};

/// Maximum of the Gauss norm over the box inner <= r <= outer (radii), attained
/// at a corner. Requires inner.e_i >= outer.e_i.
CornerMaximum corner_maximum(const TruncatedSeries& x, const RadiusTuple& inner, const RadiusTuple& outer,
                             const Prime& p);

/// d/dt_i, termwise j_i c_J t^(J - e_i).
TruncatedSeries partial_derivative(const TruncatedSeries& x, int i);
/// t_i d/dt_i, termwise j_i c_J t^J.
TruncatedSeries log_derivative(const TruncatedSeries& x, int i);
/// Multiplies by t_i^k, shifting the window.
TruncatedSeries shift(const TruncatedSeries& x, int i, int k);

/// Radius interval of a polyannulus: (inner, outer) when inner_exp is set,
/// otherwise the disc [0, outer).
struct Bracket {
  std::optional<Rational> inner_exp;
  Rational outer_exp;
};

struct TailDecayWitness {
  /// |x_l|_R for l = 1..L, x_l keeping terms with every |j_i| >= l.
  std::vector<NormExp> tail_norms;
  /// max over corners S of the intermediate box of |x_l|_S.
  std::vector<NormExp> corner_bounds;
  Rational inner_prime_exp;  // a' (unused for discs)
  Rational outer_prime_exp;  // b'
  /// eta > 1 as an exponent (negative).
  Rational eta_exp;
  /// eta^l |x_l|_R <= corner_bounds[l] for every l and the bounds are nonincreasing.
  bool certified = false;
};

/// Certified geometric decay of the tails x_l at R. Throws
/// std::invalid_argument unless R lies strictly inside the bracket.
TailDecayWitness tail_decay_witness(const TruncatedSeries& x, const RadiusTuple& r, const Bracket& bracket,
                                    const Prime& p);

}  // namespace padic
