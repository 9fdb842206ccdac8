#pragma once

#include "padic/connection.hpp"

#include <vector>

namespace padic {

/// Polynomial in one variable, coefficients in ascending degree.
using Polynomial = std::vector<Rational>;

Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_sub(const Polynomial& a, const Polynomial& b);
Rational poly_eval(const Polynomial& a, const Rational& x);

/// Coefficients a_k with P(x) = sum_k a_k binom(x, k). Throws
/// std::invalid_argument when P is not integer-valued.
std::vector<Integer> binomial_decompose(const Polynomial& p);

/// Q_j(x) = x^(d-1) (prod_{k=1}^j (k - x)/k)^d.
Polynomial q_poly(int j, int d);

struct QDifferenceSupport {
  /// Binomial-basis coefficients of Q_{j+1} - Q_j.
  std::vector<Integer> coefficients;
  /// Smallest and largest k with a_k != 0.
  int lowest = 0;
  int highest = 0;
};

/// Throws std::invalid_argument when Q_{j+1} - Q_j fails to be integer-valued.
QDifferenceSupport q_difference_support(int j, int d);

/// P(t_i d/dt_i) applied to a section.
SeriesMatrix apply_polynomial(const LogConnection& c, int i, const Polynomial& poly, const SeriesMatrix& v);

struct QDivisibility {
  /// (Q_{j+1} - Q_j)(D) v vanishes mod t_i^(j+1).
  bool difference_divisible = false;
  /// Q_j(D) v agrees with the limit section mod t_i^(j+1).
  bool limit_divisible = false;
};

/// Divisibility properties of Q_j(D_i) along the given variable, with d the
/// nilpotency index of the residue there. Needs window upper_i >= j + 1.
QDivisibility q_divisibility_check(const LogConnection& c, const SeriesMatrix& v, int j, int variable,
                                   const Prime& p);

/// Lexicographically first word (i_1..i_{m-1}) with N_{i_1}...N_{i_{m-1}} != 0,
/// m the filtration length.
std::vector<int> dl_prefactor(const MonodromyData& data);

/// D_l = prod_h D_{i_h} prod_i prod_{j=1}^l (1 - D_i/j)^m (1 + D_i/j)^m
/// applied through the connection.
SeriesMatrix dl_operator(const LogConnection& c, const std::vector<int>& word, int l, int m, const SeriesMatrix& v);

/// D_l evaluated termwise on a section written in the basis where the
/// connection is the constant data.
SeriesMatrix dl_closed_form(const MonodromyData& data, const std::vector<int>& word, int l, const SeriesMatrix& v);

struct DlComparison {
  bool matches = false;
  SeriesMatrix through_connection;
  SeriesMatrix closed_form;
};

/// dl_operator against M * dl_closed_form(M^{-1} v) with M the iterated gauge.
DlComparison dl_check(const LogConnection& c, int l, const SeriesMatrix& v, const Prime& p);

enum class HorizontalStrategy { dl_operators, q_polynomials };

struct HorizontalSection {
  SeriesMatrix section;
  /// Index l (or j) from which the operator output no longer changes.
  int stabilized_at = 0;
  /// Every D_i kills the section on the window. Strategy B only guarantees
  /// the last variable.
  bool horizontal = false;
  /// Basis vector whose image produced the section.
  int generator = 0;
};

/// Horizontal section from the first basis vector with nonzero image. Throws
/// std::runtime_error when the budget runs out before stabilization.
HorizontalSection horizontal_limit(const LogConnection& c, HorizontalStrategy strategy, const Prime& p, int budget);

/// Same from a given section; the result may be zero.
HorizontalSection horizontal_limit(const LogConnection& c, const SeriesMatrix& v, HorizontalStrategy strategy,
                                   const Prime& p, int budget);

/// Basis of horizontal sections, M times a basis of the joint kernel.
SeriesMatrix horizontal_space(const LogConnection& c, const Prime& p);

struct UnipotentFiltration {
  MonodromyData data;
  /// dim F_k for k = 1..m, ending at the rank.
  std::vector<int> dims;
  /// Constant change of basis adapted to the filtration.
  RationalMatrix adapted_basis;
  /// Gauge matrix times adapted_basis.
  SeriesMatrix total_gauge;
  /// adapted_basis^{-1} N_i adapted_basis.
  std::vector<RationalMatrix> conjugated;
  bool strictly_block_upper_triangular = false;
};

/// F_k = joint kernel of all products of k of the N_i. Throws NotUnipotent.
UnipotentFiltration unipotent_filtration(const LogConnection& c, const Prime& p);

}  // namespace padic
