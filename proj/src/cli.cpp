#include "padic/cli.hpp"

#include "padic/unipotence.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <sstream>

namespace padic {

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"validate", "residues",  "nilpotency", "gauge",    "filtration",
                                              "horizontal", "radius", "transport",  "dl-check", "reduce"};
  return names;
}

namespace {

constexpr int kTransportOrder = 8;
constexpr int kDlChecks = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const char* kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::connection: return "connection";
    case ProblemKind::series: return "series";
    case ProblemKind::division: return "division";
  }
  return "?";
}

json certificate(const NotUnipotent& e) {
  return {{"type", "NotUnipotent"},
          {"variable", e.variable()},
          {"residue", to_json(e.residue())},
          {"residue_power_rank", to_json(e.witness_power())}};
}

int max_upper(const SeriesWindow& w) { return *std::max_element(w.upper.begin(), w.upper.end()); }

int budget_for(const LogConnection& c, const CliOptions& o) {
  return o.budget.value_or(2 * (max_upper(c.window) + c.rank));
}

json residue_json(const ResidueMatrix& r) {
  return {{"variable", r.variable},
          {"matrix", to_json(r.matrix)},
          {"nilpotent", r.nilpotent},
          {"nilpotency_index", r.nilpotency_index},
          {"has_nonconstant_terms", r.has_nonconstant_terms}};
}

json horizontal_json(const HorizontalSection& h) {
  return {{"generator", h.generator},
          {"stabilized_at", h.stabilized_at},
          {"horizontal", h.horizontal},
          {"section", to_json(h.section)}};
}

int validate_connection(const LogConnection& c, const Prime& p, json& r) {
  const IntegrabilityReport ir = validate_integrability(c, p);
  r["integrable"] = ir.passes;
  json pairs = json::array();
  for (const auto& v : ir.pairs) pairs.push_back({{"i", v.i}, {"j", v.j}, {"violation_norm_exp", to_json(v.norm)}});
  r["pairs"] = pairs;
  if (!ir.passes) {
    for (const auto& v : ir.pairs)
      if (!v.norm.is_zero()) {
        r["certificate"] = {{"type", "NotIntegrable"}, {"i", v.i}, {"j", v.j}, {"residual", to_json(v.residual)}};
        break;
      }
    return kExitMathFailure;
  }
  return kExitOk;
}

int run_connection(const std::string& cmd, const LogConnection& c, const Prime& p, const CliOptions& o, json& r) {
  if (cmd == "validate") return validate_connection(c, p, r);

  if (cmd == "residues" || cmd == "nilpotency") {
    json list = json::array();
    std::optional<ResidueMatrix> bad;
    for (int i = 0; i < c.num_vars; ++i) {
      if (c.window.lower[static_cast<std::size_t>(i)] != 0) continue;
      ResidueMatrix res = residue(c, i);
      list.push_back(residue_json(res));
      if (!res.nilpotent && !bad) bad = res;
    }
    r["residues"] = list;
    if (cmd == "nilpotency") {
      r["all_nilpotent"] = !bad.has_value();
      if (bad) throw NotUnipotent(bad->variable, bad->matrix);
    }
    return kExitOk;
  }

  if (cmd == "gauge") {
    const IteratedGauge g = iterated_gauge(c, p);
    r["gauge"] = to_json(g.gauge.matrix);
    json ns = json::array();
    for (const auto& n : g.data.nilpotents) ns.push_back(to_json(n));
    r["nilpotents"] = ns;
    r["certified_radius_exp"] = to_json(g.gauge.certified_radius_exponent);
    if (c.num_vars == 1) {
      const OneVariableGauge one = canonical_gauge_1var(c, p, 0);
      r["residual_vanishes"] = gauge_residual_vanishes(one);
      r["coefficient_bound_holds"] = gauge_coefficient_bound_holds(one, p);
      r["delta_exp"] = to_json(one.delta);
    }
    return kExitOk;
  }

  if (cmd == "filtration") {
    const UnipotentFiltration f = unipotent_filtration(c, p);
    r["ranks"] = f.dims;
    json ns = json::array(), conj = json::array();
    for (const auto& n : f.data.nilpotents) ns.push_back(to_json(n));
    for (const auto& n : f.conjugated) conj.push_back(to_json(n));
    r["nilpotents"] = ns;
    r["adapted_basis"] = to_json(f.adapted_basis);
    r["conjugated"] = conj;
    r["strictly_block_upper_triangular"] = f.strictly_block_upper_triangular;
    r["gauge"] = to_json(f.total_gauge);
    return kExitOk;
  }

  if (cmd == "horizontal") {
    const int budget = budget_for(c, o);
    r["budget"] = budget;
    const HorizontalSection a = horizontal_limit(c, HorizontalStrategy::dl_operators, p, budget);
    const HorizontalSection b = horizontal_limit(c, HorizontalStrategy::q_polynomials, p, budget);
    r["dl_operators"] = horizontal_json(a);
    r["q_polynomials"] = horizontal_json(b);
    r["horizontal_space"] = to_json(horizontal_space(c, p));
    return a.horizontal ? kExitOk : kExitMathFailure;
  }

  if (cmd == "radius") {
    const OneVariableGauge g = canonical_gauge_1var(c, p, 0);
    r["nilpotency_index"] = g.nilpotency_index;
    r["delta_exp"] = to_json(g.delta);
    r["certified_radius_exp"] = to_json(g.gauge.certified_radius_exponent);
    const Rational est = radius_exponent_estimate(g, p);
    r["estimated_radius_exp"] = to_json(est);
    std::ostringstream dec;
    dec.precision(6);
    dec << std::fixed << static_cast<double>(est);
    r["estimated_radius_exp_decimal"] = dec.str();
    r["coefficient_bound_holds"] = gauge_coefficient_bound_holds(g, p);
    r["residual_vanishes"] = gauge_residual_vanishes(g);
    if (o.eta_exp) {
      const int budget = budget_for(c, o);
      const RadiusTuple radius = RadiusTuple::uniform(c.num_vars, c.outer_radius_exp);
      json checks = json::array();
      for (int l = 0; l < c.rank; ++l) {
        const EtaConvergenceReport e =
            eta_convergence_check(c, basis_section(c.rank, l, c.window), *o.eta_exp, radius, p, budget);
        checks.push_back({{"generator", l}, {"certified", e.certified}, {"order", e.order}});
      }
      r["eta_exp"] = to_json(*o.eta_exp);
      r["eta_convergence"] = checks;
    }
    return kExitOk;
  }

  if (cmd == "transport") {
    const int order = std::min(kTransportOrder, max_upper(c.window));
    const TaylorTransport tt = taylor_transport(c, order, p);
    const CocycleCheck cc = transport_cocycle_check(tt);
    r["order"] = order;
    r["cocycle_holds"] = cc.holds;
    r["compared_terms"] = cc.compared_terms;
    if (o.eta_exp) {
      const EtaConvergenceReport e =
          transport_decay(tt, *o.eta_exp, RadiusTuple::uniform(c.num_vars, c.outer_radius_exp), p);
      json norms = json::array();
      for (const auto& n : e.scaled_norms) norms.push_back(to_json(n));
      r["eta_exp"] = to_json(*o.eta_exp);
      r["scaled_norms_exp"] = norms;
      r["eta_null_certified"] = e.certified;
    }
    return cc.holds ? kExitOk : kExitMathFailure;
  }

  if (cmd == "dl-check") {
    json checks = json::array();
    bool all = true;
    for (int l = 1; l <= kDlChecks; ++l)
      for (int k = 0; k < c.rank; ++k) {
        const DlComparison d = dl_check(c, l, basis_section(c.rank, k, c.window), p);
        all = all && d.matches;
        checks.push_back({{"l", l}, {"generator", k}, {"matches", d.matches}});
      }
    r["checks"] = checks;
    r["all_match"] = all;
    return all ? kExitOk : kExitMathFailure;
  }

  throw UsageError("command '" + cmd + "' does not apply to connection files");
}

int run_series(const std::string& cmd, const SeriesProblem& s, const Prime& p, json& r) {
  if (cmd != "validate") throw UsageError("command '" + cmd + "' does not apply to series files");
  const int n = s.series.num_vars();
  const RadiusTuple radii = s.radii.value_or(RadiusTuple::uniform(n, 0));
  r["window"] = to_json(s.series.window());
  r["terms"] = s.series.terms().size();
  r["gauss_norm_exp"] = to_json(gauss_norm(s.series, radii, p));
  if (s.box) {
    const CornerMaximum cm = corner_maximum(s.series, s.box->first, s.box->second, p);
    json corner = json::array();
    for (const auto& e : cm.corner.exponents) corner.push_back(to_json(e));
    r["corner_maximum_exp"] = to_json(cm.value);
    r["corner_radii_exp"] = corner;
  }
  return kExitOk;
}

int run_division(const std::string& cmd, const DivisionProblem& d, const Prime& p, const CliOptions& o, json& r) {
  std::vector<TateElement> basis = d.basis;
  if (d.complete) {
    const CompletionResult cr = complete_basis(basis, p);
    r["completion_complete"] = cr.complete;
    if (!cr.complete) {
      r["certificate"] = {{"type", "CompletionIncomplete"}, {"diagnostic", cr.diagnostic}};
      return kExitMathFailure;
    }
    basis = cr.basis;
  }

  // Leading terms must stay put on [1, rho]; default to half the tightest
  // threshold.
  Rational tightest = d.delta_exp;
  json thresholds = json::array();
  for (const auto& g : basis) {
    const StabilityThreshold st = stability_threshold(g, d.delta_exp, p);
    tightest = std::max(tightest, st.rho_exp);
    thresholds.push_back({{"leading", st.leading}, {"threshold_rho_exp", to_json(st.rho_exp)}, {"crossover", st.crossover}});
  }
  r["stability"] = thresholds;

  if (cmd == "validate") {
    r["z_norm_at_one_exp"] = to_json(tate_norm(d.z, 0, p));
    r["y_norm_at_one_exp"] = to_json(tate_norm(d.y, 0, p));
    return kExitOk;
  }
  if (cmd != "reduce") throw UsageError("command '" + cmd + "' does not apply to division files");

  const Rational rho = o.rho_exp ? *o.rho_exp : d.rho_exp ? *d.rho_exp : tightest / 2;
  r["rho_exp"] = to_json(rho);
  const Reduction red = norm_controlled_reduce(d.z, d.y, basis, rho, d.delta_exp, p);
  json trace = json::array();
  for (const auto& s : red.trace)
    trace.push_back({{"basis_index", s.basis_index},
                     {"cancelled", s.cancelled},
                     {"multiplier", to_json(s.multiplier)},
                     {"norm_at_one_exp", to_json(s.norm_at_one)},
                     {"norm_at_rho_exp", to_json(s.norm_at_rho)}});
  const NormExp u_one = tate_norm(red.u, 0, p), y_one = tate_norm(d.y, 0, p);
  const NormExp u_rho = tate_norm(red.u, rho, p), z_rho = tate_norm(d.z, rho, p);
  r["u"] = to_json(red.u);
  r["trace"] = trace;
  r["norms"] = {{"u_at_one_exp", to_json(u_one)},
                {"y_at_one_exp", to_json(y_one)},
                {"u_at_rho_exp", to_json(u_rho)},
                {"z_at_rho_exp", to_json(z_rho)}};
  const bool ok = u_one <= y_one && u_rho <= z_rho && red.rho_invariant_held && reduction_certificate_holds(d.z, basis, red);
  r["inequalities_hold"] = ok;
  return ok ? kExitOk : kExitMathFailure;
}

}  // namespace

CommandResult run_command(const std::string& command, ProblemFile problem, const CliOptions& options) {
  CommandResult out;
  json& r = out.report;
  r["command"] = command;
  r["kind"] = kind_name(problem.kind);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (std::find(command_names().begin(), command_names().end(), command) == command_names().end())
      throw UsageError("unknown command '" + command + "'");
    const std::uint64_t prime = options.prime.value_or(problem.prime);
    if (!is_prime(prime)) throw UsageError(std::to_string(prime) + " is not prime");
    const Prime p(prime);
    r["prime"] = p.value();
    switch (problem.kind) {
      case ProblemKind::connection: {
        LogConnection c = *problem.connection;
        if (options.trunc) {
          if (*options.trunc < 0) throw UsageError("--trunc must be >= 0");
          SeriesWindow w = c.window;
          std::fill(w.upper.begin(), w.upper.end(), *options.trunc);
          for (std::size_t i = 0; i < w.upper.size(); ++i) w.upper[i] = std::max(w.upper[i], w.lower[i]);
          c = c.restricted(w);
        }
        r["window"] = to_json(c.window);
        out.exit_code = run_connection(command, c, p, options, r);
        break;
      }
      case ProblemKind::series: out.exit_code = run_series(command, *problem.series, p, r); break;
      case ProblemKind::division: out.exit_code = run_division(command, *problem.division, p, options, r); break;
    }
  } catch (const UsageError& e) {
    out.exit_code = kExitUsage;
    r["error"] = e.what();
  } catch (const NotUnipotent& e) {
    out.exit_code = kExitMathFailure;
    r["error"] = e.what();
    r["certificate"] = certificate(e);
  } catch (const std::exception& e) {
    out.exit_code = kExitMathFailure;
    r["error"] = e.what();
  }
  r["status"] = out.exit_code == kExitOk ? "ok" : out.exit_code == kExitUsage ? "error" : "failure";
  r["timing_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return out;
}

CommandResult run_command(const std::string& command, const std::string& path, const CliOptions& options) {
  try {
    return run_command(command, parse_problem(path, options.trunc.value_or(32)), options);
  } catch (const ProblemError& e) {
    CommandResult out;
    out.exit_code = kExitUsage;
    out.report = {{"command", command}, {"status", "error"}, {"error", "invalid problem file"}, {"schema_errors", e.messages()}};
    return out;
  }
}

std::string text_report(const json& report) {
  std::ostringstream os;
  for (const auto& [key, value] : report.items()) {
    std::string k = key;
    std::transform(k.begin(), k.end(), k.begin(), [](unsigned char ch) { return std::toupper(ch); });
    os << k << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  return os.str();
}

}  // namespace padic
