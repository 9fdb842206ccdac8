#pragma once

#include "padic/matrix.hpp"
#include "padic/series_matrix.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace padic {

/// Rank-r module over a polyannulus, free on a fixed basis e_1..e_r. In
/// logarithmic form matrices[i] is the matrix of t_i d/dt_i; in plain form it
/// is the matrix of d/dt_i. Columns give images of basis vectors:
/// D(e_l) = sum_j M_{jl} e_j.
struct LogConnection {
  enum class Form { logarithmic, plain };

  int rank = 0;
  int num_vars = 0;
  SeriesWindow window;
  std::vector<SeriesMatrix> matrices;
  Form form = Form::logarithmic;
  /// Outer radius a of the domain, as an exponent.
  Rational outer_radius_exp = 0;

  LogConnection() = default;
  LogConnection(int rank, SeriesWindow window, std::vector<SeriesMatrix> matrices, Form form = Form::logarithmic,
                Rational outer_radius_exp = 0);

  /// Same connection re-truncated to a new window.
  LogConnection restricted(const SeriesWindow& w) const;
};

/// Commuting nilpotent endomorphisms N_1..N_n of a rank-r space.
struct MonodromyData {
  int rank = 0;
  std::vector<RationalMatrix> nilpotents;

  /// Throws std::invalid_argument when the matrices fail to commute or are not
  /// nilpotent.
  void validate() const;
  /// Minimal m with every product of m of the N_i equal to zero.
  int filtration_length() const;
};

struct ResidueMatrix {
  int variable = 0;
  RationalMatrix matrix;
  bool nilpotent = false;
  /// Minimal k with matrix^k = 0; 0 when not nilpotent.
  int nilpotency_index = 0;
  /// The residue along t_i = 0 carries terms in the other variables.
  bool has_nonconstant_terms = false;
};

/// Thrown when an algorithm needs nilpotent residues and finds one that is
/// not. The certificate is the residue with residue^rank != 0.
class NotUnipotent : public std::runtime_error {
public:
  NotUnipotent(int variable, RationalMatrix residue);

  int variable() const { return variable_; }
  const RationalMatrix& residue() const { return residue_; }
  /// residue^rank, nonzero.
  RationalMatrix witness_power() const;

private:
  int variable_;
  RationalMatrix residue_;
};

struct IntegrabilityViolation {
  int i = 0;
  int j = 0;
  /// d_i N_j - d_j N_i + [N_i, N_j].
  SeriesMatrix residual;
  /// Sup of the residual at radius 1.
  NormExp norm;
};

struct IntegrabilityReport {
  std::vector<IntegrabilityViolation> pairs;
  bool passes = true;
};

IntegrabilityReport validate_integrability(const LogConnection& c, const Prime& p);

/// Requires lower_i == 0; throws std::invalid_argument otherwise.
ResidueMatrix residue(const LogConnection& c, int i);

LogConnection build_unipotent(const MonodromyData& m, const SeriesWindow& window);

/// t_i d/dt_i applied to a section.
SeriesMatrix log_action(const LogConnection& c, int i, const SeriesMatrix& v);
/// d/dt_i applied to a section.
SeriesMatrix derivative_action(const LogConnection& c, int i, const SeriesMatrix& v);

/// Connection matrices in the basis e*M: M^{-1}(N M + d M). Logarithmic form,
/// power-series window.
LogConnection gauge_transform(const LogConnection& c, const SeriesMatrix& m);

struct GaugeTransform {
  SeriesMatrix matrix;
  /// Entries certifiably converge for |t| < p^(-certified_radius_exponent).
  Rational certified_radius_exponent;
};

struct OneVariableGauge {
  GaugeTransform gauge;
  int variable = 0;
  RationalMatrix residue;
  int nilpotency_index = 1;
  /// max{1, |N|} at the outer radius.
  NormExp delta;
  Rational outer_radius_exp;
  /// Coefficient matrices N_i and M_i of t_k^i.
  std::vector<RationalMatrix> connection_coefficients;
  std::vector<RationalMatrix> gauge_coefficients;
};

/// Canonical gauge M = I mod t_k with N M + d_k M = M N_0 for the k-th
/// matrix with every other variable frozen at exponent 0. Throws
/// NotUnipotent when N_0 is not nilpotent.
OneVariableGauge canonical_gauge_1var(const LogConnection& c, const Prime& p, int variable = 0);

/// Exponent threshold 2e/(p-1) + a_exp - 2e delta_exp; radii with strictly
/// larger exponent are certified.
Rational convergence_radius_bound(const Rational& a_exp, const NormExp& delta, int e, const Prime& p);

/// N M + i M_i - M N_0 == 0 coefficientwise up to the computed order.
bool gauge_residual_vanishes(const OneVariableGauge& g);

/// Exponent form of |M_i| <= |i!|^{-2e} a^{-i} delta^{2ei} for every i.
bool gauge_coefficient_bound_holds(const OneVariableGauge& g, const Prime& p);

/// Mean of -v_p(M_i)/i over the last quarter of the computed coefficients,
/// an estimate of the exponent of the convergence radius.
Rational radius_exponent_estimate(const OneVariableGauge& g, const Prime& p);

struct IteratedGauge {
  GaugeTransform gauge;
  MonodromyData data;
  /// Per-variable gauges in the order they were applied.
  std::vector<OneVariableGauge> steps;
};

/// Composite gauge trivializing c to constant commuting nilpotent matrices.
/// Requires an integrable connection in logarithmic form on a power-series
/// window. Throws NotUnipotent on a non-nilpotent residue.
IteratedGauge iterated_gauge(const LogConnection& c, const Prime& p);

struct EtaConvergenceReport {
  /// Highest total order examined.
  int order = 0;
  /// min over |I| = k of exponent(|I!^{-1} d^I v|_R) for k = 0..order.
  std::vector<NormExp> term_norms;
  /// term_norms[k] times eta^k.
  std::vector<NormExp> scaled_norms;
  bool certified = false;
};

/// Verdict on whether the Taylor multisequence of v is eta-null at R,
/// certified only to the computed order. eta = p^(-eta_exp), eta_exp > 0.
EtaConvergenceReport eta_convergence_check(const LogConnection& c, const SeriesMatrix& v, const Rational& eta_exp,
                                           const RadiusTuple& r, const Prime& p, int budget);

/// Applies the growth test shared by the eta checks: over three equal
/// stretches of indices starting at `start`, the minimal scaled exponents
/// must strictly increase.
bool scaled_sequence_grows(const std::vector<NormExp>& scaled, int start);

struct TaylorTransport {
  int order = 0;
  int num_vars = 0;
  /// E_I = prod_j prod_{l<i_j} (d_j - l) applied to the basis, for I in
  /// [0, order]^n. The transport is sum_I E_I (u-1)^I / I!.
  std::map<Exponents, SeriesMatrix> coefficients;

  /// The transport as a matrix of series in (t_1..t_n, s_1..s_n), s = u - 1.
  SeriesMatrix as_series() const;
};

TaylorTransport taylor_transport(const LogConnection& c, int order, const Prime& p);

struct CocycleCheck {
  bool holds = false;
  /// Number of coefficients compared.
  std::size_t compared_terms = 0;
};

/// E(t, a) E(t(1+a), b) == E(t, a + b + ab) on every coefficient of
/// a^x b^y with x_j + y_j <= order. Requires a power-series window.
CocycleCheck transport_cocycle_check(const TaylorTransport& tt);

/// eta-null test for the transport coefficients E_I / I! at radius R.
EtaConvergenceReport transport_decay(const TaylorTransport& tt, const Rational& eta_exp, const RadiusTuple& r,
                                     const Prime& p);

}  // namespace padic
