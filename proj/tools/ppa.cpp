#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "ppa/commands.hpp"
#include "ppa/config.hpp"

namespace {

constexpr int kUsage = static_cast<int>(ppa::ExitCode::UsageError);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-parameter proximal point iteration and its quantitative bounds"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  auto* run = app.add_subcommand("run", "Run an experiment and write CSV reports");
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("-o,--out", out_dir, "Output directory")->capture_default_str();

  ppa::BoundArgs bargs;
  auto* bound = app.add_subcommand("bound", "Evaluate one bound for the config's moduli");
  bound->add_option("config", config_path, "Experiment config file")->required();
  bound->add_option("name", bargs.name, "Bound name")
      ->required()
      ->check(CLI::IsMember(ppa::bound_names()));
  bound->add_option("--k", bargs.k, "Precision index k")->capture_default_str();
  bound->add_option("--n", bargs.n, "Start index n")->capture_default_str();
  bound->add_option("--fspec", bargs.fspec, "Counterfunction")->capture_default_str();
  bound->add_option("--M", bargs.M, "Start M (theta)")->capture_default_str();
  bound->add_option("--t", bargs.t, "Shift t (theta, R)")->capture_default_str();
  bound->add_option("--N", bargs.N, "Bound N (defaults to the derived N)");
  bound->add_option("--D", bargs.D, "Bound D (defaults to the derived D)");

  std::string lemma;
  std::uint64_t seed = 7;
  std::optional<std::size_t> trials;
  auto* oracle = app.add_subcommand("oracle", "Run seeded brute-force lemma suites");
  oracle->add_option("--lemma", lemma, "ratap, limsup2, xu, suzuki1 or suzuki2 (default: all)");
  oracle->add_option("--seed", seed, "Random seed")->capture_default_str();
  oracle->add_option("--trials", trials, "Number of trials (default per lemma)");

  auto* verify = app.add_subcommand("verify", "Run all checks and oracle suites");
  verify->add_option("config", config_path, "Experiment config file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*oracle) return ppa::cmd_oracle(lemma, seed, trials, std::cout, std::cerr);
    const ppa::ExperimentConfig config = ppa::load_config(config_path);
    if (*run) return ppa::cmd_run(config, out_dir, std::cout, std::cerr);
    if (*bound) return ppa::cmd_bound(config, bargs, std::cout, std::cerr);
    return ppa::cmd_verify(config, std::cout, std::cerr);
  } catch (const ppa::ConfigError& e) {
    std::cerr << "config error:\n" << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
