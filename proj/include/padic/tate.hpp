#pragma once

#include "padic/series.hpp"

#include <map>
#include <string>
#include <vector>

namespace padic {

/// Polynomial element of the Tate algebra in x_1..x_n, with x_n the variable
/// whose radius is varied. Exponents are nonnegative.
class TateElement {
public:
  using Terms = std::map<Exponents, Rational>;

  TateElement() = default;
  explicit TateElement(int num_vars) : num_vars_(num_vars) {}

  static TateElement monomial(int num_vars, const Exponents& j, const Rational& c);
  static TateElement constant(int num_vars, const Rational& c);

  int num_vars() const { return num_vars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;

  void add_term(const Exponents& j, const Rational& c);

  TateElement& operator+=(const TateElement& other);
  TateElement& operator-=(const TateElement& other);
  friend TateElement operator+(TateElement a, const TateElement& b) { return a += b; }
  friend TateElement operator-(TateElement a, const TateElement& b) { return a -= b; }
  friend TateElement operator*(const TateElement& a, const TateElement& b);
  friend bool operator==(const TateElement&, const TateElement&) = default;

private:
  int num_vars_ = 0;
  Terms terms_;
};

/// Exponent of |y|_lambda = max_J |c_J| lambda^(j_n), lambda = p^(-lambda_exp).
NormExp tate_norm(const TateElement& y, const Rational& lambda_exp, const Prime& p);

/// Monomial order: j_n first, then lexicographic on (j_1..j_{n-1}).
bool monomial_less(const Exponents& a, const Exponents& b);

bool divides(const Exponents& a, const Exponents& b);

struct LeadingTerm {
  Exponents exponent;
  Rational coefficient;
  NormExp norm;
};

/// Largest monomial among the terms of maximal lambda-norm. Requires
/// lambda_exp >= delta_exp and y != 0.
LeadingTerm leading_term(const TateElement& y, const Rational& lambda_exp, const Rational& delta_exp, const Prime& p);

struct StabilityThreshold {
  /// Leading exponent at radius 1.
  Exponents leading;
  /// The leading term stays the same for rho_exp in (rho_exp, 0]; equals
  /// delta_exp when no crossover happens before delta.
  Rational rho_exp;
  bool crossover = false;
};

StabilityThreshold stability_threshold(const TateElement& y, const Rational& delta_exp, const Prime& p);

struct ReductionStep {
  int basis_index = 0;
  /// Cancelled exponent and the multiplier c_j with z_{j+1} = z_j - c_j d.
  Exponents cancelled;
  TateElement multiplier;
  NormExp norm_at_one;
  NormExp norm_at_rho;
};

struct Reduction {
  TateElement u;
  std::vector<ReductionStep> trace;
  /// |z_j|_rho <= |z|_rho at every step.
  bool rho_invariant_held = true;
};

/// From z and y with z - y in the ideal, finds u = z - sum c_j d_j with
/// |u|_1 <= |y|_1 and |u|_rho <= |z|_rho. The basis must be standard at
/// radius 1 and its leading terms stable up to rho. Throws
/// std::domain_error when a leading term is not divisible by any basis
/// leading term, std::runtime_error when the step budget runs out.
Reduction norm_controlled_reduce(const TateElement& z, const TateElement& y, const std::vector<TateElement>& basis,
                                 const Rational& rho_exp, const Rational& delta_exp, const Prime& p,
                                 int step_budget = 10000);

/// z - u == sum of multiplier * basis element over the trace.
bool reduction_certificate_holds(const TateElement& z, const std::vector<TateElement>& basis, const Reduction& r);

struct CompletionResult {
  std::vector<TateElement> basis;
  bool complete = false;
  std::string diagnostic;
};

/// Buchberger-style completion for the radius-1 leading terms. Stops with a
/// diagnostic when a new element exceeds the degree cap or a reduction
/// exceeds the step budget.
CompletionResult complete_basis(const std::vector<TateElement>& generators, const Prime& p, int degree_cap = 12,
                                int step_budget = 2000);

struct HadamardCheck {
  Rational lambda_exp;
  NormExp at_one;
  NormExp at_delta;
  NormExp at_lambda;
  /// |g|_lambda <= |g|_1^c |g|_delta^(1-c).
  bool holds = false;
};

/// Log-convexity of the Gauss norm between radii 1 and delta, at
/// lambda = delta^(1-c).
HadamardCheck polydisc_hadamard_check(const TateElement& g, const Rational& c, const Rational& delta_exp,
                                      const Prime& p);

}  // namespace padic
