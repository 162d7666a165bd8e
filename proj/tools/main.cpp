#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

using lipfree::cli::Format;
using lipfree::cli::RunConfig;

void add_output_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--output,-o", cfg.output, "Output path ('-' for stdout)");
  sub->add_option("--format", cfg.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"json", Format::json}, {"csv", Format::csv}}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz-free space projections, norms and extension experiments"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* norm = app.add_subcommand("norm", "Free-space norm of a molecule, with a maximizing potential");
  norm->add_option("--input,-i", cfg.input, "Molecule JSON")->required();
  add_output_flags(norm, cfg);

  auto* project = app.add_subcommand("project", "Evaluate Q_n f at sample points against f and the error bound");
  project->add_option("--input,-i", cfg.input, "Tabulated function JSON {points, values}; McShane-extended");
  project->add_option("--function", cfg.function,
                      "Built-in: identity-coordinate, l1-norm, max-coordinate, random-lattice");
  project->add_option("--n", cfg.n, "Level")->check(CLI::Range(1, 20));
  project->add_option("--dim", cfg.dim, "Work in l1^N with this N (default: l1)");
  project->add_option("--points", cfg.points, "JSON array of sample points");
  project->add_option("--samples", cfg.samples, "Random samples when --points is absent");
  project->add_option("--seed", cfg.seed, "Seed for random functions and samples");
  project->add_option("--tol", cfg.tol, "Slack for the within_bound flag");
  add_output_flags(project, cfg);

  auto* fdd = app.add_subcommand("fdd-table", "||S_n mu||, ||S_n mu - mu|| and the error bound for n = 1..n_max");
  fdd->add_option("--input,-i", cfg.input, "Molecule JSON (l1 or l1N)")->required();
  fdd->add_option("--n-max", cfg.n_max, "Largest level")->check(CLI::Range(1, 20));
  add_output_flags(fdd, cfg);

  auto* verify = app.add_subcommand("verify", "Run the property suites");
  verify->add_option("--seed", cfg.seed, "Base seed");
  verify->add_option("--suite", cfg.suite, "Only suites whose name starts with this prefix");
  add_output_flags(verify, cfg);

  auto* bap = app.add_subcommand("bap", "Restriction/extension chain on a finite metric space");
  bap->add_option("--input,-i", cfg.input, "Metric space JSON, optionally with \"values\"")->required();
  bap->add_option("--scheme", cfg.scheme, "inv-dist or shepard-p");
  bap->add_option("--p", cfg.p, "Shepard exponent");
  add_output_flags(bap, cfg);

  // Tables default to CSV.
  for (auto* sub : {fdd, bap})
    sub->preparse_callback([&cfg](std::size_t) { cfg.format = Format::csv; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : lipfree::cli::kInputError;
  }

  if (norm->parsed()) return lipfree::cli::cmd_norm(cfg, std::cerr);
  if (project->parsed()) return lipfree::cli::cmd_project(cfg, std::cerr);
  if (fdd->parsed()) return lipfree::cli::cmd_fdd_table(cfg, std::cerr);
  if (verify->parsed()) return lipfree::cli::cmd_verify(cfg, std::cerr);
  return lipfree::cli::cmd_bap(cfg, std::cerr);
}
