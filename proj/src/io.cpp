#include "padic/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace padic {

ProblemError::ProblemError(std::vector<std::string> messages)
    : std::runtime_error([&] {
        std::string s = "invalid problem file";
        for (const auto& m : messages) s += "\n  " + m;
        return s;
      }()),
      messages_(std::move(messages)) {}

namespace {

struct Term {
  Exponents exps;
  Rational coeff;
};

// Walks a document, collecting every schema violation instead of stopping
// at the first.
class Reader {
public:
  std::vector<std::string> errors;

  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

  bool object(const json& j, const std::string& path, const std::set<std::string>& allowed) {
    if (!j.is_object()) {
      fail(path, "expected an object");
      return false;
    }
    for (const auto& [key, value] : j.items())
      if (!allowed.count(key)) fail(path + "/" + key, "unknown field");
    return true;
  }

  const json* required(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      fail(path + "/" + key, "missing required field");
      return nullptr;
    }
    return &*it;
  }

  const json* optional(const json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
  }

  std::optional<long long> integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      fail(path, "expected an integer");
      return std::nullopt;
    }
    return j.get<long long>();
  }

  // Required top-level integer in [lo, hi]; 0 marks a reported failure.
  int count_field(const json& root, const std::string& key, int lo, int hi) {
    const json* j = required(root, "", key);
    if (!j) return 0;
    const auto v = integer(*j, "/" + key);
    if (!v) return 0;
    if (*v < lo || *v > hi) {
      fail("/" + key, key + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
      return 0;
    }
    return static_cast<int>(*v);
  }

  std::optional<Rational> rational(const json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (!j.is_string()) {
      fail(path, "expected a rational string \"num/den\"");
      return std::nullopt;
    }
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<std::vector<int>> int_list(const json& j, const std::string& path, std::size_t length) {
    if (!j.is_array() || j.size() != length) {
      fail(path, "expected an array of " + std::to_string(length) + " integers");
      return std::nullopt;
    }
    std::vector<int> out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = integer(j[i], path + "/" + std::to_string(i));
      if (v) out.push_back(static_cast<int>(*v));
      else ok = false;
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  std::optional<std::vector<Rational>> rational_list(const json& j, const std::string& path, std::size_t length) {
    if (!j.is_array() || j.size() != length) {
      fail(path, "expected an array of " + std::to_string(length) + " rationals");
      return std::nullopt;
    }
    std::vector<Rational> out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto v = rational(j[i], path + "/" + std::to_string(i));
      if (v) out.push_back(*v);
      else ok = false;
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  std::optional<std::vector<Term>> terms(const json& j, const std::string& path, std::size_t n) {
    if (!j.is_array()) {
      fail(path, "expected an array of terms");
      return std::nullopt;
    }
    std::vector<Term> out;
    bool ok = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
      const std::string tp = path + "/" + std::to_string(i);
      if (!object(j[i], tp, {"exps", "coeff"})) {
        ok = false;
        continue;
      }
      const json* e = required(j[i], tp, "exps");
      const json* c = required(j[i], tp, "coeff");
      auto exps = e ? int_list(*e, tp + "/exps", n) : std::nullopt;
      auto coeff = c ? rational(*c, tp + "/coeff") : std::nullopt;
      if (exps && coeff) out.push_back({*exps, *coeff});
      else ok = false;
    }
    return ok ? std::optional(out) : std::nullopt;
  }

  std::optional<SeriesWindow> window(const json& j, const std::string& path, std::size_t n) {
    if (!object(j, path, {"lower", "upper"})) return std::nullopt;
    const json* lo = required(j, path, "lower");
    const json* up = required(j, path, "upper");
    auto lower = lo ? int_list(*lo, path + "/lower", n) : std::nullopt;
    auto upper = up ? int_list(*up, path + "/upper", n) : std::nullopt;
    if (!lower || !upper) return std::nullopt;
    try {
      return SeriesWindow(*lower, *upper);
    } catch (const std::invalid_argument& e) {
      fail(path, e.what());
      return std::nullopt;
    }
  }

  std::optional<TruncatedSeries> series(const json& j, const std::string& path, const SeriesWindow& w,
                                        bool strict) {
    auto ts = terms(j, path, static_cast<std::size_t>(w.num_vars()));
    if (!ts) return std::nullopt;
    TruncatedSeries s(w);
    for (std::size_t i = 0; i < ts->size(); ++i) {
      const auto& [e, c] = (*ts)[i];
      if (strict && !w.contains(e)) {
        fail(path + "/" + std::to_string(i) + "/exps", "exponent outside the window");
        return std::nullopt;
      }
      s.accumulate(e, c);
    }
    return s;
  }

  std::optional<TateElement> tate(const json& j, const std::string& path, int n) {
    auto ts = terms(j, path, static_cast<std::size_t>(n));
    if (!ts) return std::nullopt;
    TateElement y(n);
    for (std::size_t i = 0; i < ts->size(); ++i) {
      try {
        y.add_term((*ts)[i].exps, (*ts)[i].coeff);
      } catch (const std::invalid_argument& e) {
        fail(path + "/" + std::to_string(i) + "/exps", e.what());
        return std::nullopt;
      }
    }
    return y;
  }
};

void parse_connection(Reader& rd, const json& root, ProblemFile& pf, int default_trunc) {
  const int r = rd.count_field(root, "rank", 1, 64);
  const int vars = rd.count_field(root, "num_vars", 1, 8);
  if (r == 0 || vars == 0) return;
  const auto n = static_cast<std::size_t>(vars);

  std::optional<SeriesWindow> window;
  if (const json* w = rd.optional(root, "window")) {
    window = rd.window(*w, "/window", n);
    pf.window_given = true;
  } else {
    window = SeriesWindow::power_series(static_cast<int>(n), default_trunc);
  }

  auto form = LogConnection::Form::logarithmic;
  if (const json* f = rd.optional(root, "form")) {
    if (*f == "log") form = LogConnection::Form::logarithmic;
    else if (*f == "plain") form = LogConnection::Form::plain;
    else rd.fail("/form", "expected \"log\" or \"plain\"");
  }
  Rational outer = 0;
  if (const json* a = rd.optional(root, "outer_radius_exp")) {
    if (auto v = rd.rational(*a, "/outer_radius_exp")) {
      if (*v < 0) rd.fail("/outer_radius_exp", "must be >= 0");
      else outer = *v;
    }
  }

  const json* ms = rd.required(root, "", "matrices");
  if (!ms || !window) return;
  if (!ms->is_array() || ms->size() != n) {
    rd.fail("/matrices", "expected one matrix per variable");
    return;
  }
  std::vector<SeriesMatrix> matrices;
  bool ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string mp = "/matrices/" + std::to_string(i);
    const json& m = (*ms)[i];
    if (!m.is_array() || m.size() != static_cast<std::size_t>(r)) {
      rd.fail(mp, "expected " + std::to_string(r) + " rows");
      ok = false;
      continue;
    }
    SeriesMatrix sm(r, r, *window);
    for (int row = 0; row < r; ++row) {
      const std::string rp = mp + "/" + std::to_string(row);
      const json& rj = m[static_cast<std::size_t>(row)];
      if (!rj.is_array() || rj.size() != static_cast<std::size_t>(r)) {
        rd.fail(rp, "expected " + std::to_string(r) + " entries");
        ok = false;
        continue;
      }
      for (int col = 0; col < r; ++col) {
        auto s = rd.series(rj[static_cast<std::size_t>(col)], rp + "/" + std::to_string(col), *window,
                           pf.window_given);
        if (s) sm(row, col) = *s;
        else ok = false;
      }
    }
    matrices.push_back(std::move(sm));
  }
  if (!ok) return;
  try {
    pf.connection = LogConnection(r, *window, std::move(matrices), form, outer);
  } catch (const std::invalid_argument& e) {
    rd.fail("", e.what());
  }
}

void parse_series(Reader& rd, const json& root, ProblemFile& pf) {
  const json* s = rd.required(root, "", "series");
  if (!s || !rd.object(*s, "/series", {"window", "terms"})) return;
  const json* w = rd.required(*s, "/series", "window");
  const json* t = rd.required(*s, "/series", "terms");
  if (!w || !t) return;
  if (!w->is_object() || !w->contains("lower") || !(*w)["lower"].is_array()) {
    rd.fail("/series/window", "expected {\"lower\": [...], \"upper\": [...]}");
    return;
  }
  const std::size_t n = (*w)["lower"].size();
  auto window = rd.window(*w, "/series/window", n);
  if (!window) return;
  auto series = rd.series(*t, "/series/terms", *window, true);
  if (!series) return;

  SeriesProblem sp{*series, std::nullopt, std::nullopt};
  auto radius = [&](const json& j, const std::string& path) -> std::optional<RadiusTuple> {
    auto v = rd.rational_list(j, path, n);
    if (!v) return std::nullopt;
    try {
      return RadiusTuple(*v);
    } catch (const std::invalid_argument& e) {
      rd.fail(path, e.what());
      return std::nullopt;
    }
  };
  if (const json* r = rd.optional(root, "radii_exp")) sp.radii = radius(*r, "/radii_exp");
  if (const json* b = rd.optional(root, "box")) {
    if (rd.object(*b, "/box", {"inner_exp", "outer_exp"})) {
      const json* in = rd.required(*b, "/box", "inner_exp");
      const json* out = rd.required(*b, "/box", "outer_exp");
      auto inner = in ? radius(*in, "/box/inner_exp") : std::nullopt;
      auto outer = out ? radius(*out, "/box/outer_exp") : std::nullopt;
      if (inner && outer) sp.box = std::pair{*inner, *outer};
    }
  }
  pf.series = std::move(sp);
}

void parse_division(Reader& rd, const json& root, ProblemFile& pf) {
  const int n = rd.count_field(root, "num_vars", 1, 8);
  const json* delta_j = rd.required(root, "", "delta_exp");
  auto delta = delta_j ? rd.rational(*delta_j, "/delta_exp") : std::nullopt;
  if (delta && *delta > 0) rd.fail("/delta_exp", "delta_exp must be <= 0");
  if (n == 0 || !delta) return;

  DivisionProblem dp;
  dp.num_vars = n;
  dp.delta_exp = *delta;
  const json* z = rd.required(root, "", "z");
  const json* y = rd.required(root, "", "y");
  const json* basis = rd.required(root, "", "basis");
  auto zz = z ? rd.tate(*z, "/z", n) : std::nullopt;
  auto yy = y ? rd.tate(*y, "/y", n) : std::nullopt;
  bool ok = zz && yy;
  if (basis) {
    if (!basis->is_array()) {
      rd.fail("/basis", "expected an array of elements");
      ok = false;
    } else {
      for (std::size_t i = 0; i < basis->size(); ++i) {
        auto d = rd.tate((*basis)[i], "/basis/" + std::to_string(i), n);
        if (d && d->is_zero()) rd.fail("/basis/" + std::to_string(i), "basis element is zero");
        if (d && !d->is_zero()) dp.basis.push_back(*d);
        else ok = false;
      }
    }
  }
  if (const json* r = rd.optional(root, "rho_exp")) {
    dp.rho_exp = rd.rational(*r, "/rho_exp");
    if (!dp.rho_exp) ok = false;
  }
  if (const json* c = rd.optional(root, "complete")) {
    if (c->is_boolean()) dp.complete = c->get<bool>();
    else rd.fail("/complete", "expected a boolean");
  }
  if (!ok || !basis) return;
  dp.z = *zz;
  dp.y = *yy;
  pf.division = std::move(dp);
}

}  // namespace

ProblemFile parse_problem_text(const std::string& text, int default_trunc) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ProblemError({std::string("malformed JSON: ") + e.what()});
  }
  Reader rd;
  ProblemFile pf;
  if (!root.is_object()) throw ProblemError({": expected an object"});

  std::set<std::string> allowed{"version", "prime", "kind"};
  const json* kind_j = rd.required(root, "", "kind");
  bool kind_ok = false;
  if (kind_j) {
    if (*kind_j == "connection") {
      pf.kind = ProblemKind::connection;
      allowed.insert({"rank", "num_vars", "window", "matrices", "form", "outer_radius_exp"});
      kind_ok = true;
    } else if (*kind_j == "series") {
      pf.kind = ProblemKind::series;
      allowed.insert({"series", "radii_exp", "box"});
      kind_ok = true;
    } else if (*kind_j == "division") {
      pf.kind = ProblemKind::division;
      allowed.insert({"num_vars", "delta_exp", "z", "y", "basis", "rho_exp", "complete"});
      kind_ok = true;
    } else {
      rd.fail("/kind", "expected \"connection\", \"series\" or \"division\"");
    }
  }
  rd.object(root, "", allowed);

  if (const json* v = rd.required(root, "", "version")) {
    auto version = rd.integer(*v, "/version");
    if (version && *version != 1) rd.fail("/version", "unsupported version " + std::to_string(*version));
  }
  if (const json* p = rd.required(root, "", "prime")) {
    if (!p->is_number_unsigned()) {
      rd.fail("/prime", "expected a positive integer");
    } else {
      pf.prime = p->get<std::uint64_t>();
      try {
        Prime checked(pf.prime);
      } catch (const std::invalid_argument&) {
        rd.fail("/prime", std::to_string(pf.prime) + " is not prime");
      }
    }
  }

  if (kind_ok) {
    switch (pf.kind) {
      case ProblemKind::connection: parse_connection(rd, root, pf, default_trunc); break;
      case ProblemKind::series: parse_series(rd, root, pf); break;
      case ProblemKind::division: parse_division(rd, root, pf); break;
    }
  }
  if (!rd.errors.empty()) throw ProblemError(rd.errors);
  return pf;
}

ProblemFile parse_problem(const std::string& path, int default_trunc) {
  std::ifstream in(path);
  if (!in) throw ProblemError({path + ": cannot open file"});
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str(), default_trunc);
}

json to_json(const Rational& x) { return to_string(x); }

json to_json(const NormExp& n) { return n.to_string(); }

json to_json(const RationalMatrix& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const TruncatedSeries& s) {
  json out = json::array();
  for (const auto& [j, c] : s.terms()) out.push_back({{"exps", j}, {"coeff", to_string(c)}});
  return out;
}

json to_json(const SeriesWindow& w) { return {{"lower", w.lower}, {"upper", w.upper}}; }

json to_json(const SeriesMatrix& m) {
  json out = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(const TateElement& y) {
  json out = json::array();
  for (const auto& [j, c] : y.terms()) out.push_back({{"exps", j}, {"coeff", to_string(c)}});
  return out;
}

}  // namespace padic
