// Command-line front end: padic-cli <command> <file> [flags]

#include "padic/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <map>

int main(int argc, char** argv) {
  CLI::App app{"Exact p-adic differential module toolkit"};
  app.require_subcommand(1);

  padic::CliOptions options;
  std::string file;
  std::uint64_t prime = 0;
  int trunc = 0;
  int budget = 0;
  std::string eta, rho, json_out;

  const std::map<std::string, std::string> about{
      {"validate", "Parse the file and check integrability or series norms"},
      {"residues", "Residue matrices along each t_i = 0"},
      {"nilpotency", "Nilpotency index of each residue"},
      {"gauge", "Gauge to constant commuting nilpotent matrices"},
      {"filtration", "Unipotent filtration and adapted basis"},
      {"horizontal", "Horizontal sections by both limit strategies"},
      {"radius", "Convergence radius of the one-variable gauge"},
      {"transport", "Taylor transport and its cocycle identity"},
      {"dl-check", "Compare D_l operators with their closed form"},
      {"reduce", "Norm-controlled division in the Tate algebra"},
  };
  for (const auto& name : padic::command_names()) {
    auto* sub = app.add_subcommand(name, about.count(name) ? about.at(name) : "");
    sub->add_option("file", file, "Problem file (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--prime", prime, "Override the prime from the file");
    sub->add_option("--trunc", trunc, "Truncation order T (default 32)")->check(CLI::NonNegativeNumber);
    sub->add_option("--eta-exp", eta, "eta = p^(-eta_exp) for convergence checks");
    sub->add_option("--rho-exp", rho, "Radius exponent for division");
    sub->add_option("--budget", budget, "Limit-operator budget (default 2(T+r))")->check(CLI::PositiveNumber);
    sub->add_option("--json", json_out, "Write the JSON report to this path");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : padic::kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--prime")) options.prime = prime;
  if (sub->count("--trunc")) options.trunc = trunc;
  if (sub->count("--budget")) options.budget = budget;
  try {
    if (sub->count("--eta-exp")) options.eta_exp = padic::parse_rational(eta);
    if (sub->count("--rho-exp")) options.rho_exp = padic::parse_rational(rho);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return padic::kExitUsage;
  }
  if (sub->count("--json")) options.json_out = json_out;

  const padic::CommandResult result = padic::run_command(sub->get_name(), file, options);
  if (options.json_out) {
    std::ofstream out(*options.json_out);
    if (!out) {
      std::cerr << "error: cannot write " << *options.json_out << '\n';
      return padic::kExitUsage;
    }
    out << result.report.dump(2) << '\n';
  } else {
    std::cout << padic::text_report(result.report);
  }
  return result.exit_code;
}
