#include "commands.hpp"

#include "fracext/error.hpp"
#include "fracext/parallel.hpp"

#include "CLI11.hpp"

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"fracext: multilinear extension estimates for fractal measures"};
  app.require_subcommand(1);
  fracext::cli::Options opts;
  std::string config, out = "run";
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::size_t cap = fracext::kDefaultAtomCap;
  // global flags are accepted after the subcommand too; set before subcommands inherit
  app.fallthrough();
  auto* o_config = app.add_option("--config", config, "JSON config file");
  auto* o_seed = app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--cap-atoms", cap, "atom cap for measure construction");

  const std::vector<std::pair<std::string, std::vector<std::string>>> groups{
      {"measure", {"build", "dims", "decay"}},       {"extend", {"norm", "ratio"}},
      {"convolve", {"run", "verify-thm31"}},         {"knapp", {"build", "validate", "ratio-trend"}},
      {"oracle", {"count", "identity"}},             {"regions", {"plot"}},
  };
  std::string group, action;
  for (const auto& [g, actions] : groups) {
    auto* sub = app.add_subcommand(g);
    sub->require_subcommand(1);
    for (const auto& a : actions)
      sub->add_subcommand(a)->callback([&group, &action, g = g, a = a] {
        group = g;
        action = a;
      });
  }
  app.add_subcommand("accept", "run the acceptance suite")->callback([&] { group = "accept"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  if (*o_config) opts.config = config;
  if (*o_seed) opts.seed = seed;
  opts.out = out;
  opts.cap_atoms = cap;
  fracext::set_thread_count(threads);

  try {
    return fracext::cli::run(group, action, opts);
  } catch (const fracext::SchemaError& e) {
    std::cerr << "schema error at " << e.path() << ": " << e.what() << '\n';
    return 2;
  } catch (const fracext::InfeasibleParameters& e) {
    std::cerr << "infeasible parameters: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
