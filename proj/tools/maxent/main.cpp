#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace cli = maxent::cli;

int main(int argc, char** argv) {
  CLI::App app{"Maximum-entropy inference over finite sample spaces"};
  app.require_subcommand(1);

  cli::Options options;
  std::string format = "human";
  std::string profile = "default";
  std::uint64_t seed = 0;
  bool minimax = false;
  bool naive = false;
  std::string file;
  std::string demo;

  auto common = [&](CLI::App* sub, bool takes_file) {
    sub->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"human", "structured"}))
        ->capture_default_str();
    sub->add_option("--precision", options.precision, "Significant digits in reports")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
    sub->add_option("--tolerance-profile", profile, "Solver tolerances")
        ->check(CLI::IsMember({"default", "strict"}))
        ->capture_default_str();
    sub->add_option("--seed", seed, "Override the seed of randomized steps");
    if (takes_file) sub->add_option("file", file, "Problem file")->required();
  };

  auto* solve = app.add_subcommand("solve", "Compute the MaxEnt distribution");
  common(solve, true);
  auto* minimax_flag = solve->add_flag("--minimax", minimax, "Minimax solution over [branch] sections (default)");
  solve->add_flag("--naive", naive, "Highest-entropy branch solution")->excludes(minimax_flag);

  auto* verify = app.add_subcommand("verify", "Check the saddle and equalizer properties");
  common(verify, true);
  auto* classify = app.add_subcommand("classify", "Grade each [query] on the correctness hierarchy");
  common(classify, true);
  auto* shift = app.add_subcommand("shift", "Validate a representation shift and compare inferences");
  common(shift, true);
  auto* kelly = app.add_subcommand("kelly", "Simulate repeated proportional gambling");
  common(kelly, true);
  auto* demo_cmd = app.add_subcommand("demo", "Run a built-in example: bertrand or disjunctive");
  common(demo_cmd, false);
  demo_cmd->add_option("name", demo, "Demo name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  options.format = format == "structured" ? cli::Format::Structured : cli::Format::Human;
  if (profile == "strict") options.config = maxent::SolverConfig::strict();
  for (auto* sub : app.get_subcommands()) {
    if (sub->count("--seed")) options.seed = seed;
  }
  options.union_mode = naive ? cli::UnionMode::Naive : cli::UnionMode::Minimax;

  if (solve->parsed()) return cli::cmd_solve(file, options, std::cout, std::cerr);
  if (verify->parsed()) return cli::cmd_verify(file, options, std::cout, std::cerr);
  if (classify->parsed()) return cli::cmd_classify(file, options, std::cout, std::cerr);
  if (shift->parsed()) return cli::cmd_shift(file, options, std::cout, std::cerr);
  if (kelly->parsed()) return cli::cmd_kelly(file, options, std::cout, std::cerr);
  return cli::cmd_demo(demo, options, std::cout, std::cerr);
}
