#include "padic/tate.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace padic {

TateElement TateElement::monomial(int num_vars, const Exponents& j, const Rational& c) {
  TateElement y(num_vars);
  y.add_term(j, c);
  return y;
}

TateElement TateElement::constant(int num_vars, const Rational& c) {
  return monomial(num_vars, Exponents(static_cast<std::size_t>(num_vars), 0), c);
}

int TateElement::total_degree() const {
  int d = 0;
  for (const auto& [j, c] : terms_) d = std::max(d, std::accumulate(j.begin(), j.end(), 0));
  return d;
}

void TateElement::add_term(const Exponents& j, const Rational& c) {
  if (static_cast<int>(j.size()) != num_vars_) throw std::invalid_argument("TateElement: exponent has wrong length");
  if (std::any_of(j.begin(), j.end(), [](int x) { return x < 0; }))
    throw std::invalid_argument("TateElement: negative exponent");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

TateElement& TateElement::operator+=(const TateElement& other) {
  if (other.num_vars_ != num_vars_) throw std::invalid_argument("TateElement: num_vars mismatch");
  for (const auto& [j, c] : other.terms_) add_term(j, c);
  return *this;
}

TateElement& TateElement::operator-=(const TateElement& other) {
  if (other.num_vars_ != num_vars_) throw std::invalid_argument("TateElement: num_vars mismatch");
  for (const auto& [j, c] : other.terms_) add_term(j, -c);
  return *this;
}

TateElement operator*(const TateElement& a, const TateElement& b) {
  if (a.num_vars_ != b.num_vars_) throw std::invalid_argument("TateElement: num_vars mismatch");
  TateElement out(a.num_vars_);
  Exponents j(static_cast<std::size_t>(a.num_vars_));
  for (const auto& [ja, ca] : a.terms_)
    for (const auto& [jb, cb] : b.terms_) {
      for (std::size_t i = 0; i < j.size(); ++i) j[i] = ja[i] + jb[i];
      out.add_term(j, ca * cb);
    }
  return out;
}

namespace {

Rational term_exponent(const Exponents& j, const Rational& c, const Rational& lambda_exp, const Prime& p) {
  return Rational(*p_valuation(c, p)) + j.back() * lambda_exp;
}

LeadingTerm leading_unchecked(const TateElement& y, const Rational& lambda_exp, const Prime& p) {
  if (y.is_zero()) throw std::invalid_argument("leading_term: zero element");
  const Exponents* best_j = nullptr;
  const Rational* best_c = nullptr;
  Rational best_e;
  for (const auto& [j, c] : y.terms()) {
    Rational e = term_exponent(j, c, lambda_exp, p);
    if (!best_j || e < best_e || (e == best_e && monomial_less(*best_j, j))) {
      best_j = &j;
      best_c = &c;
      best_e = e;
    }
  }
  return {*best_j, *best_c, NormExp(best_e)};
}

}  // namespace

NormExp tate_norm(const TateElement& y, const Rational& lambda_exp, const Prime& p) {
  NormExp best = NormExp::zero();
  for (const auto& [j, c] : y.terms()) best = max(best, NormExp(term_exponent(j, c, lambda_exp, p)));
  return best;
}

bool monomial_less(const Exponents& a, const Exponents& b) {
  if (a.back() != b.back()) return a.back() < b.back();
  return std::lexicographical_compare(a.begin(), a.end() - 1, b.begin(), b.end() - 1);
}

bool divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

LeadingTerm leading_term(const TateElement& y, const Rational& lambda_exp, const Rational& delta_exp, const Prime& p) {
  if (delta_exp > 0) throw std::invalid_argument("leading_term: delta must be >= 1");
  if (lambda_exp < delta_exp) throw std::invalid_argument("leading_term: lambda exceeds delta");
  return leading_unchecked(y, lambda_exp, p);
}

StabilityThreshold stability_threshold(const TateElement& y, const Rational& delta_exp, const Prime& p) {
  if (delta_exp > 0) throw std::invalid_argument("stability_threshold: delta must be >= 1");
  const LeadingTerm lt = leading_unchecked(y, 0, p);
  const Rational v_lead = lt.norm.exponent();
  StabilityThreshold out;
  out.leading = lt.exponent;
  out.rho_exp = delta_exp;
  for (const auto& [j, c] : y.terms()) {
    const int gap = j.back() - lt.exponent.back();
    if (gap <= 0) continue;
    // Term j overtakes the leader once rho_exp <= -(v_j - v_lead) / gap.
    const Rational crossing = -(Rational(*p_valuation(c, p)) - v_lead) / gap;
    if (crossing > out.rho_exp) {
      out.rho_exp = crossing;
      out.crossover = true;
    }
  }
  return out;
}

Reduction norm_controlled_reduce(const TateElement& z, const TateElement& y, const std::vector<TateElement>& basis,
                                 const Rational& rho_exp, const Rational& delta_exp, const Prime& p, int step_budget) {
  if (z.num_vars() != y.num_vars()) throw std::invalid_argument("norm_controlled_reduce: num_vars mismatch");
  if (rho_exp > 0 || rho_exp < delta_exp)
    throw std::invalid_argument("norm_controlled_reduce: rho must lie between 1 and delta");
  std::vector<LeadingTerm> leads;
  for (const auto& d : basis) {
    if (d.num_vars() != z.num_vars()) throw std::invalid_argument("norm_controlled_reduce: basis num_vars mismatch");
    leads.push_back(leading_unchecked(d, 0, p));
    if (leading_unchecked(d, rho_exp, p).exponent != leads.back().exponent)
      throw std::invalid_argument("norm_controlled_reduce: basis leading term not stable up to rho");
  }

  const NormExp y_one = tate_norm(y, 0, p);
  const NormExp z_rho = tate_norm(z, rho_exp, p);
  Reduction out;
  out.u = z;
  for (int step = 0; !(tate_norm(out.u, 0, p) <= y_one); ++step) {
    if (step >= step_budget) throw std::runtime_error("norm_controlled_reduce: step budget exhausted");
    const LeadingTerm w = leading_unchecked(out.u - y, 0, p);
    std::size_t k = 0;
    while (k < leads.size() && !divides(leads[k].exponent, w.exponent)) ++k;
    if (k == leads.size())
      throw std::domain_error("norm_controlled_reduce: leading term not divisible; z - y outside the ideal or "
                              "basis not standard");
    Exponents quotient = w.exponent;
    for (std::size_t i = 0; i < quotient.size(); ++i) quotient[i] -= leads[k].exponent[i];
    ReductionStep s;
    s.basis_index = static_cast<int>(k);
    s.cancelled = w.exponent;
    s.multiplier = TateElement::monomial(z.num_vars(), quotient, w.coefficient / leads[k].coefficient);
    out.u -= s.multiplier * basis[k];
    s.norm_at_one = tate_norm(out.u, 0, p);
    s.norm_at_rho = tate_norm(out.u, rho_exp, p);
    if (z_rho < s.norm_at_rho) out.rho_invariant_held = false;
    out.trace.push_back(std::move(s));
  }
  return out;
}

bool reduction_certificate_holds(const TateElement& z, const std::vector<TateElement>& basis, const Reduction& r) {
  TateElement sum(z.num_vars());
  for (const auto& s : r.trace) sum += s.multiplier * basis[static_cast<std::size_t>(s.basis_index)];
  return z - r.u == sum;
}

namespace {

// Cancels leading terms until none is divisible by a basis leading term.
TateElement top_reduce(TateElement f, const std::vector<TateElement>& basis, const Prime& p, int budget) {
  for (int step = 0; !f.is_zero(); ++step) {
    if (step >= budget) throw std::runtime_error("reduction step budget exhausted");
    const LeadingTerm w = leading_unchecked(f, 0, p);
    bool reduced = false;
    for (const auto& d : basis) {
      const LeadingTerm l = leading_unchecked(d, 0, p);
      if (!divides(l.exponent, w.exponent)) continue;
      Exponents q = w.exponent;
      for (std::size_t i = 0; i < q.size(); ++i) q[i] -= l.exponent[i];
      f -= TateElement::monomial(f.num_vars(), q, w.coefficient / l.coefficient) * d;
      reduced = true;
      break;
    }
    if (!reduced) break;
  }
  return f;
}

}  // namespace

CompletionResult complete_basis(const std::vector<TateElement>& generators, const Prime& p, int degree_cap,
                                int step_budget) {
  CompletionResult out;
  for (const auto& g : generators)
    if (!g.is_zero()) out.basis.push_back(g);
  if (out.basis.empty()) {
    out.complete = true;
    return out;
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 1; j < out.basis.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    const auto [i, j] = pairs.back();
    pairs.pop_back();
    const LeadingTerm a = leading_unchecked(out.basis[i], 0, p);
    const LeadingTerm b = leading_unchecked(out.basis[j], 0, p);
    Exponents lcm = a.exponent;
    bool coprime = true;
    for (std::size_t k = 0; k < lcm.size(); ++k) {
      if (a.exponent[k] > 0 && b.exponent[k] > 0) coprime = false;
      lcm[k] = std::max(a.exponent[k], b.exponent[k]);
    }
    if (coprime) continue;
    Exponents qa = lcm, qb = lcm;
    for (std::size_t k = 0; k < lcm.size(); ++k) {
      qa[k] -= a.exponent[k];
      qb[k] -= b.exponent[k];
    }
    const int n = out.basis[i].num_vars();
    TateElement s = TateElement::monomial(n, qa, 1 / a.coefficient) * out.basis[i] -
                    TateElement::monomial(n, qb, 1 / b.coefficient) * out.basis[j];
    TateElement r;
    try {
      r = top_reduce(std::move(s), out.basis, p, step_budget);
    } catch (const std::runtime_error& e) {
      out.diagnostic = e.what();
      return out;
    }
    if (r.is_zero()) continue;
    if (r.total_degree() > degree_cap) {
      out.diagnostic = "new basis element of degree " + std::to_string(r.total_degree()) + " exceeds the cap " +
                       std::to_string(degree_cap);
      return out;
    }
    out.basis.push_back(std::move(r));
    for (std::size_t k = 0; k + 1 < out.basis.size(); ++k) pairs.emplace_back(k, out.basis.size() - 1);
  }
  out.complete = true;
  return out;
}

HadamardCheck polydisc_hadamard_check(const TateElement& g, const Rational& c, const Rational& delta_exp,
                                      const Prime& p) {
  if (c < 0 || c > 1) throw std::invalid_argument("polydisc_hadamard_check: c must lie in [0, 1]");
  if (delta_exp > 0) throw std::invalid_argument("polydisc_hadamard_check: delta must be >= 1");
  HadamardCheck h;
  h.lambda_exp = (1 - c) * delta_exp;
  h.at_one = tate_norm(g, 0, p);
  h.at_delta = tate_norm(g, delta_exp, p);
  h.at_lambda = tate_norm(g, h.lambda_exp, p);
  h.holds = g.is_zero() || !(h.at_one.pow(c) * h.at_delta.pow(1 - c) < h.at_lambda);
  return h;
}

}  // namespace padic
