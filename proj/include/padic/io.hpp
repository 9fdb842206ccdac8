#pragma once

#include "padic/connection.hpp"
#include "padic/tate.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace padic {

using json = nlohmann::ordered_json;

/// Schema violations collected over a whole file, each prefixed by its JSON
/// path.
class ProblemError : public std::runtime_error {
public:
  explicit ProblemError(std::vector<std::string> messages);
  const std::vector<std::string>& messages() const { return messages_; }

private:
  std::vector<std::string> messages_;
};

enum class ProblemKind { connection, series, division };

struct SeriesProblem {
  TruncatedSeries series;
  std::optional<RadiusTuple> radii;
  /// Box of radii (inner, outer) for the corner maximum.
  std::optional<std::pair<RadiusTuple, RadiusTuple>> box;
};

struct DivisionProblem {
  int num_vars = 0;
  Rational delta_exp;
  TateElement z;
  TateElement y;
  std::vector<TateElement> basis;
  std::optional<Rational> rho_exp;
  /// Run the basis completion before dividing.
  bool complete = false;
};

struct ProblemFile {
  int version = 1;
  std::uint64_t prime = 0;
  ProblemKind kind = ProblemKind::connection;
  /// Connection files without a window get [0, T]^n; remember which.
  bool window_given = false;
  std::optional<LogConnection> connection;
  std::optional<SeriesProblem> series;
  std::optional<DivisionProblem> division;
};

/// Throws ProblemError on I/O or schema problems, including a composite prime.
ProblemFile parse_problem(const std::string& path, int default_trunc = 32);
ProblemFile parse_problem_text(const std::string& text, int default_trunc = 32);

json to_json(const Rational& x);
json to_json(const NormExp& n);
json to_json(const RationalMatrix& m);
json to_json(const TruncatedSeries& s);
json to_json(const SeriesWindow& w);
json to_json(const SeriesMatrix& m);
json to_json(const TateElement& y);

}  // namespace padic
